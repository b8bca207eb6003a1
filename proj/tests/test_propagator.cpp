#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "phaselab/closed_forms.hpp"
#include "phaselab/propagator.hpp"

using namespace phaselab;

namespace {

RotatingModel make_model(Axis axis, double gamma, double h, double omega) {
  ModelParams p;
  p.gamma = gamma;
  p.h = h;
  p.omega = omega;
  p.axis = axis;
  return rotating_model(p);
}

}  // namespace

TEST_CASE("evolution operator basics") {
  const RotatingModel m = make_model(Axis::z, 0.5, 0.3, 0.5);
  CHECK(max_abs(evolution_operator(m, 0.0, 1e-10).mat() -
                Matrix::Identity(8, 8)) == 0.0);

  // evolution under a constant Hamiltonian equals the spectral exponential
  const TimeHamiltonian constant = [&m](double) { return m.tilde_h.mat(); };
  const Matrix u = evolution_operator(constant, 8, 2.0, 1e-10).mat();
  CHECK(max_abs(u - spectral_exp(m.tilde_h, 2.0).mat()) <= 1e-8);
}

TEST_CASE("one period matches the operator decomposition") {
  const RotatingModel m = make_model(Axis::z, 0.7, 0.4, 0.6);
  const Matrix u = evolution_operator(m, m.period, 1e-10).mat();
  const Matrix decomposed =
      drive_rotation(m, m.period).mat() *
      spectral_exp(frame_generator(m), m.period).mat();
  CHECK(max_abs(u - decomposed) <= 1e-8);
}

TEST_CASE("parallel and serial column kernels are bitwise equal") {
  const RotatingModel m = make_model(Axis::x, 0.5, 0.3, 0.5);
  const Matrix a = evolution_operator(m, 0.73 * m.period, 1e-9).mat();
  const Matrix b = evolution_operator_serial(m, 0.73 * m.period, 1e-9).mat();
  CHECK(std::memcmp(a.data(), b.data(), sizeof(Complex) * 64) == 0);
}

TEST_CASE("total phase of cyclic eigenstates") {
  const double gamma = 0.5, h = 0.3, omega = 0.5;
  const RotatingModel m = make_model(Axis::z, gamma, h, omega);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  for (int k = 0; k < 8; k += 3) {
    const double chi = total_phase(m, sys.vectors.col(k), 1e-10);
    CHECK(angle_distance(chi, -kPi - sys.values(k) * m.period) <= 1e-8);
  }

  // gamma = 1 decoupled state |000>
  const RotatingModel m1 = make_model(Axis::z, 1.0, 0.5, 0.3);
  StateVector e0 = StateVector::Zero(8);
  e0(0) = 1.0;
  const double chi = total_phase(m1, e0, 1e-10);
  CHECK(angle_distance(chi, -kPi + 1.5 * 0.8 * m1.period) <= 1e-8);
}

TEST_CASE("total phase rejects non-cyclic input") {
  const RotatingModel m = make_model(Axis::z, 0.5, 0.3, 0.5);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  StateVector mixed =
      (sys.vectors.col(0) + sys.vectors.col(1)) / std::sqrt(2.0);
  CHECK_THROWS_WITH_AS(total_phase(m, mixed, 1e-10),
                       doctest::Contains("not cyclic"), Error);
  StateVector unnormalized = 2.0 * sys.vectors.col(0);
  CHECK_THROWS_AS(total_phase(m, unnormalized, 1e-10), InvalidInput);
}

TEST_CASE("degenerate group members share the total phase") {
  const double gamma = 0.5, h = 0.3, omega = 0.5;
  const RotatingModel m = make_model(Axis::x, gamma, h, omega);
  const auto [b1, b2] = x_spectrum_closed(gamma, h, omega);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  std::vector<double> phases;
  for (int k = 0; k < 8; ++k)
    if (std::abs(sys.values(k) - b1) < 1e-8)
      phases.push_back(total_phase(m, sys.vectors.col(k), 1e-10));
  REQUIRE(phases.size() == 2);
  CHECK(angle_distance(phases[0], phases[1]) <= 1e-6);
}

TEST_CASE("dynamical phase of cyclic eigenstates") {
  const double gamma = 0.5, h = 0.3, omega = 0.5;
  const RotatingModel m = make_model(Axis::z, gamma, h, omega);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  const StateVector phi = sys.vectors.col(2);
  const double expected =
      -std::real(Complex(phi.dot(m.tilde_h.mat() * phi))) * m.period;
  CHECK(std::abs(dynamical_phase_integral(m, phi, 1e-10) - expected) <= 1e-6);

  // gamma = 1, |000>: delta = (3h/2) T
  const RotatingModel m1 = make_model(Axis::z, 1.0, 0.5, 0.3);
  StateVector e0 = StateVector::Zero(8);
  e0(0) = 1.0;
  CHECK(std::abs(dynamical_phase_integral(m1, e0, 1e-10) -
                 1.5 * 0.5 * m1.period) <= 1e-6);
}

TEST_CASE("dynamical phase is linear in the Hamiltonian scale") {
  // At h = 0 the x-model degenerate cyclic states do not depend on the
  // overall scale of H~, so scaling H~ scales delta exactly.
  const double gamma = 0.6, omega = 0.7, c = 2.5;
  const RotatingModel m = make_model(Axis::x, gamma, 0.0, omega);
  const RotatingModel scaled{HermitianOperator(c * m.tilde_h.mat()), m.drive,
                             m.params, m.period};
  const auto [b1, b2] = x_spectrum_closed(gamma, 0.0, omega);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  for (int k = 0; k < 8; ++k) {
    if (std::abs(sys.values(k) - b1) > 1e-8) continue;
    const StateVector phi = sys.vectors.col(k);
    const double d1 = dynamical_phase_integral(m, phi, 1e-10);
    const double dc = dynamical_phase_integral(scaled, phi, 1e-10);
    CHECK(std::abs(dc - c * d1) <= 1e-6 * (1.0 + std::abs(c * d1)));
  }
}

TEST_CASE("geometric phase oracle fixed cases") {
  // gamma = 1 decoupled state: geometric phase 0 (mod 2 pi)
  const RotatingModel m1 = make_model(Axis::z, 1.0, 0.5, 0.3);
  StateVector e0 = StateVector::Zero(8);
  e0(0) = 1.0;
  const PhaseBreakdown pb = geometric_phase_oracle(m1, e0, 1e-10);
  CHECK(angle_distance(pb.geometric, 0.0) <= 1e-6);
  CHECK(angle_distance(pb.geometric, pb.total - pb.dynamical) <= 1e-10);

  // generic point, state 1 vs the closed formula
  const double gamma = 0.5, h = 0.3, omega = 0.5;
  const RotatingModel m = make_model(Axis::z, gamma, h, omega);
  const ZModelSpectrum s = z_spectrum_closed(gamma, h, omega);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  for (int k = 0; k < 8; ++k) {
    if (std::abs(sys.values(k) - s.p1) > 1e-8) continue;
    const PhaseBreakdown oracle =
        geometric_phase_oracle(m, sys.vectors.col(k), 1e-10);
    CHECK(angle_distance(oracle.geometric,
                         aa_phase_closed(gamma, h, omega, 1)) <= 1e-6);
  }

  // x-model degenerate member vs the scalar holonomy angle
  const RotatingModel mx = make_model(Axis::x, gamma, h, omega);
  const auto [b1, b2] = x_spectrum_closed(gamma, h, omega);
  const EigenSystem sx = hermitian_eig(frame_generator(mx));
  for (int k = 0; k < 8; ++k) {
    if (std::abs(sx.values(k) - b1) > 1e-8) continue;
    const PhaseBreakdown oracle =
        geometric_phase_oracle(mx, sx.vectors.col(k), 1e-10);
    CHECK(angle_distance(oracle.geometric, x_holonomy_closed(h, omega, 1)) <=
          1e-6);
    break;
  }
}

TEST_CASE("Floquet identity for the propagator") {
  const RotatingModel m = make_model(Axis::z, 0.5, 0.3, 0.5);
  const Matrix u_period = evolution_operator(m, m.period, 1e-10).mat();
  for (double frac : {0.1, 0.37, 0.9}) {
    const double t = frac * m.period;
    const Matrix u_t = evolution_operator(m, t, 1e-10).mat();
    const Matrix u_shift = evolution_operator(m, t + m.period, 1e-10).mat();
    CHECK(max_abs(u_shift - u_t * u_period) <= 1e-7);
  }
}

TEST_CASE("norm conservation along sampled trajectories") {
  const RotatingModel m = make_model(Axis::x, 0.5, 0.3, 0.5);
  const EigenSystem sys = hermitian_eig(frame_generator(m));
  const PropagationResult res =
      propagate_state(m, sys.vectors.col(3), m.period, 1e-10, 64);
  REQUIRE(res.trajectory_samples.size() > 4);
  double worst = 0.0;
  for (const auto& [t, psi] : res.trajectory_samples)
    worst = std::max(worst, std::abs(psi.norm() - 1.0));
  CHECK(worst <= 1e-8);
  CHECK(std::abs(res.final_state.norm() - 1.0) <= 1e-9);
}

TEST_CASE("tolerance monotonicity of the unitarity defect") {
  const RotatingModel m = make_model(Axis::z, 0.5, 0.3, 0.2);
  double previous = 1e9;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    const double defect =
        evolution_operator(m, m.period, tol).unitarity_defect();
    CHECK(defect <= previous + 1e-15);
    previous = defect;
  }
}

TEST_CASE("refinement ceiling raises a diagnostic error") {
  const TimeHamiltonian flat = [](double) {
    return Matrix::Identity(2, 2).eval();
  };
  try {
    evolution_operator(flat, 2, 1.0, 1e-300, false, 3);
    CHECK(false);
  } catch (const ConvergenceError& e) {
    CHECK(e.last_residual >= 0.0);
  }
}
