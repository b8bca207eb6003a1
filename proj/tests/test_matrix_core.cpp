#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include "phaselab/matrix_core.hpp"

using namespace phaselab;

namespace {

Matrix random_hermitian(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(dist(rng), dist(rng));
  return 0.5 * (a + Matrix(a.adjoint()));
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(),
                     sizeof(Complex) * a.rows() * a.cols()) == 0;
}

}  // namespace

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(ComplexMatrix(Matrix::Zero(2, 3)), InvalidInput);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(ComplexMatrix{bad}, InvalidInput);

  Matrix nonherm(2, 2);
  nonherm << 1, Complex(0, 1), Complex(0, 1), 1;
  CHECK_THROWS_AS(HermitianOperator(std::move(nonherm)), InvalidInput);
  CHECK_NOTHROW(HermitianOperator(random_hermitian(5, 7)));

  Matrix nonunit = 2.0 * Matrix::Identity(3, 3);
  CHECK_THROWS_AS(UnitaryOperator(std::move(nonunit)), InvalidInput);
  CHECK_NOTHROW(UnitaryOperator(Matrix::Identity(3, 3)));
}

TEST_CASE("principal value and angle distance") {
  CHECK(principal_value(2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(principal_value(-kPi) == doctest::Approx(kPi));
  CHECK(principal_value(kPi) == doctest::Approx(kPi));
  CHECK(principal_value(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(angle_distance(0.1, 0.1 + 4.0 * kPi) == doctest::Approx(0.0));
  CHECK(angle_distance(-3.0, 3.0) == doctest::Approx(2.0 * kPi - 6.0));
}

TEST_CASE("hermitian_eig identity matrix") {
  const EigenSystem sys =
      hermitian_eig(HermitianOperator(Matrix::Identity(4, 4)), 1e-9);
  for (int k = 0; k < 4; ++k) CHECK(sys.values(k) == doctest::Approx(1.0));
  REQUIRE(sys.groups.size() == 1);
  CHECK(sys.groups[0].second == 4);
}

TEST_CASE("hermitian_eig diagonal clustering") {
  Eigen::Vector4cd d(-2.0 / 3.0, 0.0, 1.0 / 3.0, 1.0 / 3.0);
  const EigenSystem sys =
      hermitian_eig(HermitianOperator(Matrix(d.asDiagonal())), 1e-9);
  REQUIRE(sys.groups.size() == 3);
  CHECK(sys.groups[0].second == 1);
  CHECK(sys.groups[1].second == 1);
  CHECK(sys.groups[2].second == 2);
}

TEST_CASE("hermitian_eig of the gamma=1 field-free block") {
  // First row decouples, the lower 3x3 is circulant with -1/3 couplings:
  // eigenvalues -2/3 (symmetric), 0 (decoupled), 1/3 twice.
  Matrix p = Matrix::Zero(4, 4);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j)
      if (i != j) p(i, j) = -1.0 / 3.0;
  const EigenSystem sys = hermitian_eig(HermitianOperator(std::move(p)));
  CHECK(sys.values(0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
  CHECK(sys.values(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sys.values(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(sys.values(3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition invariants on random operators") {
  for (int dim = 2; dim <= 8; ++dim) {
    const HermitianOperator h(random_hermitian(dim, 100 + dim));
    const EigenSystem sys = hermitian_eig(h);
    const double scale = 1.0 + max_abs(h.mat());
    CHECK(max_abs(h.mat() * sys.vectors -
                  sys.vectors * sys.values.asDiagonal()) <= 1e-10 * scale);
    CHECK(max_abs(Matrix(sys.vectors.adjoint() * sys.vectors) -
                  Matrix::Identity(dim, dim)) <= 1e-10);
    CHECK(max_abs(sys.vectors * sys.values.asDiagonal() *
                      sys.vectors.adjoint() -
                  h.mat()) <= 1e-9 * scale);
    // gauge: pivot entries real positive
    for (int k = 0; k < dim; ++k) {
      int pivot = 0;
      for (int i = 1; i < dim; ++i)
        if (std::abs(sys.vectors(i, k)) > std::abs(sys.vectors(pivot, k)))
          pivot = i;
      CHECK(sys.vectors(pivot, k).real() > 0.0);
      CHECK(std::abs(sys.vectors(pivot, k).imag()) <= 1e-14);
    }
  }
}

TEST_CASE("eigendecomposition is bit-deterministic") {
  const HermitianOperator h(random_hermitian(6, 42));
  const EigenSystem a = hermitian_eig(h);
  const EigenSystem b = hermitian_eig(h);
  CHECK(bitwise_equal(a.vectors, b.vectors));
  CHECK(std::memcmp(a.values.data(), b.values.data(), sizeof(double) * 6) ==
        0);
}

TEST_CASE("spectral_exp basics") {
  const HermitianOperator h(random_hermitian(4, 3));
  CHECK(max_abs(spectral_exp(h, 0.0).mat() - Matrix::Identity(4, 4)) <= 1e-14);

  // half-integer spin through 2 pi
  Matrix sz2(2, 2);
  sz2 << 0.5, 0, 0, -0.5;
  CHECK(max_abs(
            spectral_exp(HermitianOperator(std::move(sz2)), 2.0 * kPi).mat() +
            Matrix::Identity(2, 2)) <= 1e-12);

  // the z-model drive block at one period
  const double omega = 0.7;
  Eigen::Vector4cd diag(3.0, -1.0, -1.0, -1.0);
  const HermitianOperator drive(Matrix((0.5 * omega * diag).asDiagonal()));
  CHECK(max_abs(spectral_exp(drive, 2.0 * kPi / omega).mat() +
                Matrix::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("spectral_exp inverse property") {
  for (int dim = 2; dim <= 8; ++dim) {
    const HermitianOperator h(random_hermitian(dim, 900 + dim));
    const Matrix u = spectral_exp(h, 0.83).mat();
    const Matrix v = spectral_exp(h, -0.83).mat();
    CHECK(max_abs(u * v - Matrix::Identity(dim, dim)) <= 1e-10);
  }
}

TEST_CASE("ordered_exp trivial generators") {
  const Generator zero = [](double) { return Matrix::Zero(3, 3); };
  CHECK(max_abs(ordered_exp(zero, 0.0, 2.0, 1e-12).mat() -
                Matrix::Identity(3, 3)) <= 1e-12);

  // constant generator collapses to the matrix exponential
  const HermitianOperator h(random_hermitian(3, 88));
  const Generator constant = [&h](double) -> Matrix {
    return Complex(0, 1) * h.mat();
  };
  const Matrix expected = spectral_exp(h, -1.7).mat();  // exp(i H 1.7)
  CHECK(max_abs(ordered_exp(constant, 0.0, 1.7, 1e-12).mat() - expected) <=
        1e-10);
}

TEST_CASE("ordered_exp on a constant scalar connection") {
  // x-model connection matrix over one period vs the spectral route.
  const double h = 0.5, omega = 0.5;
  const double c = 0.5 * omega * (omega / std::hypot(h, omega) - 1.0);
  const Matrix conn = c * Matrix::Identity(2, 2);
  const Generator gen = [&conn](double) -> Matrix {
    return Complex(0, 1) * conn;
  };
  const double period = 2.0 * kPi / omega;
  const Matrix via_ordered = ordered_exp(gen, 0.0, period, 1e-12).mat();
  const Matrix via_spectral =
      spectral_exp(HermitianOperator(conn), -period).mat();
  CHECK(max_abs(via_ordered - via_spectral) <= 1e-10);
}

TEST_CASE("ordered_exp group property") {
  const Matrix a0 = Complex(0, 1) * random_hermitian(3, 5);
  const Matrix a1 = Complex(0, 1) * random_hermitian(3, 6);
  const Generator gen = [&](double t) -> Matrix {
    return a0 + std::sin(t) * a1;
  };
  const double tol = 1e-11;
  const Matrix whole = ordered_exp(gen, 0.0, 2.0, tol).mat();
  const Matrix right = ordered_exp(gen, 1.0, 2.0, tol).mat();
  const Matrix left = ordered_exp(gen, 0.0, 1.0, tol).mat();
  CHECK(max_abs(whole - right * left) <= 5.0 * tol);
}

TEST_CASE("ordered_exp input and convergence errors") {
  const Generator zero = [](double) { return Matrix::Zero(2, 2); };
  CHECK_THROWS_AS(ordered_exp(zero, 1.0, 0.0, 1e-10), InvalidInput);
  CHECK_THROWS_AS(ordered_exp(zero, 0.0, 1.0, 0.0), InvalidInput);

  const Generator stiff = [](double) -> Matrix {
    return Complex(0, 1) * Matrix::Identity(2, 2);
  };
  try {
    ordered_exp(stiff, 0.0, 1.0, 1e-300, 3);
    CHECK(false);
  } catch (const ConvergenceError& e) {
    CHECK(e.last_residual > 0.0);
    CHECK(e.previous_residual >= e.last_residual);
  }
}

TEST_CASE("ordered_exp is bit-deterministic") {
  const Matrix a0 = Complex(0, 1) * random_hermitian(4, 11);
  const Generator gen = [&](double t) -> Matrix { return std::cos(t) * a0; };
  const Matrix u = ordered_exp(gen, 0.0, 3.0, 1e-10).mat();
  const Matrix v = ordered_exp(gen, 0.0, 3.0, 1e-10).mat();
  CHECK(bitwise_equal(u, v));
}
