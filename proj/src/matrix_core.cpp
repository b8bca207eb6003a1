#include "phaselab/matrix_core.hpp"

#include <cmath>
#include <sstream>

namespace phaselab {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

}  // namespace

ComplexMatrix::ComplexMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw InvalidInput("ComplexMatrix: matrix must be square and non-empty");
  if (!all_finite(m_)) throw InvalidInput("ComplexMatrix: non-finite entry");
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
  const Matrix& a = m_.mat();
  const double defect = max_abs(a - Matrix(a.adjoint()));
  const double scale = std::max(1.0, max_abs(a));
  if (defect > 1e-12 * scale) {
    std::ostringstream os;
    os << "HermitianOperator: hermiticity defect " << defect << " exceeds "
       << 1e-12 * scale;
    throw InvalidInput(os.str());
  }
}

UnitaryOperator::UnitaryOperator(Matrix m) : m_(std::move(m)) {
  const double defect = unitarity_defect();
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "UnitaryOperator: unitarity defect " << defect;
    throw InvalidInput(os.str());
  }
}

double UnitaryOperator::unitarity_defect() const {
  const Matrix& u = m_.mat();
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

double default_group_tol(const Eigen::VectorXd& values) {
  const double range = values(values.size() - 1) - values(0);
  return 1e-9 * (range + 1.0);
}

EigenSystem hermitian_eig(const HermitianOperator& h, double group_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success) {
    const double res =
        max_abs(h.mat() * solver.eigenvectors() -
                solver.eigenvectors() * solver.eigenvalues().asDiagonal());
    throw ConvergenceError("hermitian_eig: eigensolver did not converge", res,
                           res);
  }

  EigenSystem sys;
  sys.values = solver.eigenvalues();
  sys.vectors = solver.eigenvectors();

  const int n = static_cast<int>(sys.values.size());

  // Gauge fix: largest-magnitude component real and positive, first index wins
  // ties.
  for (int k = 0; k < n; ++k) {
    int pivot = 0;
    double best = std::abs(sys.vectors(0, k));
    for (int i = 1; i < n; ++i) {
      const double a = std::abs(sys.vectors(i, k));
      if (a > best) {
        best = a;
        pivot = i;
      }
    }
    const Complex p = sys.vectors(pivot, k);
    sys.vectors.col(k) *= std::conj(p) / std::abs(p);
  }

  const double scale = 1.0 + max_abs(h.mat());
  const double residual =
      max_abs(h.mat() * sys.vectors - sys.vectors * sys.values.asDiagonal());
  if (residual > 1e-10 * scale)
    throw ConvergenceError("hermitian_eig: residual above tolerance", residual,
                           residual);
  const double ortho = max_abs(Matrix(sys.vectors.adjoint() * sys.vectors) -
                               Matrix::Identity(n, n));
  if (ortho > 1e-10)
    throw ConvergenceError("hermitian_eig: eigenvectors not orthonormal", ortho,
                           ortho);

  sys.group_tol = group_tol > 0.0 ? group_tol : default_group_tol(sys.values);
  int first = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n || sys.values(k) - sys.values(k - 1) > sys.group_tol) {
      sys.groups.emplace_back(first, k - first);
      first = k;
    }
  }
  return sys;
}

UnitaryOperator spectral_exp(const HermitianOperator& h, double s) {
  if (!std::isfinite(s)) throw InvalidInput("spectral_exp: s must be finite");
  const EigenSystem sys = hermitian_eig(h);
  const Eigen::VectorXcd phases =
      (sys.values.array() * -s)
          .unaryExpr([](double x) { return Complex(std::cos(x), std::sin(x)); })
          .matrix();
  return UnitaryOperator(sys.vectors * phases.asDiagonal() *
                         sys.vectors.adjoint());
}

namespace {

// One pass of classical RK4 over [t0, t1] with n steps, for dY/dt = g(t) Y.
Matrix rk4_sweep(const Generator& g, double t0, double t1, long n) {
  const double h = (t1 - t0) / static_cast<double>(n);
  Matrix g_left = g(t0);
  const Eigen::Index dim = g_left.rows();
  Matrix y = Matrix::Identity(dim, dim);
  for (long i = 0; i < n; ++i) {
    const double tl = t0 + static_cast<double>(i) * h;
    const double tr = t0 + static_cast<double>(i + 1) * h;
    const Matrix g_mid = g(tl + 0.5 * h);
    const Matrix g_right = g(tr);
    const Matrix k1 = g_left * y;
    const Matrix k2 = g_mid * (y + (0.5 * h) * k1);
    const Matrix k3 = g_mid * (y + (0.5 * h) * k2);
    const Matrix k4 = g_right * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    g_left = g_right;
  }
  return y;
}

}  // namespace

ComplexMatrix ordered_exp(const Generator& g, double t0, double t1, double tol,
                          int max_depth) {
  if (t1 < t0) throw InvalidInput("ordered_exp: t1 must be >= t0");
  if (!(tol > 0.0)) throw InvalidInput("ordered_exp: tol must be positive");

  const Matrix probe = g(t0);
  if (probe.rows() != probe.cols())
    throw InvalidInput("ordered_exp: generator must be square");
  if (t1 == t0)
    return ComplexMatrix(Matrix::Identity(probe.rows(), probe.cols()));

  long n = 16;
  Matrix coarse = rk4_sweep(g, t0, t1, n);
  double prev_res = std::numeric_limits<double>::infinity();
  double res = prev_res;
  for (int depth = 0; depth < max_depth; ++depth) {
    n *= 2;
    Matrix fine = rk4_sweep(g, t0, t1, n);
    prev_res = res;
    res = max_abs(fine - coarse);
    if (res < tol) return ComplexMatrix(std::move(fine));
    coarse = std::move(fine);
  }
  throw ConvergenceError("ordered_exp: refinement ceiling reached", res,
                         prev_res);
}

}  // namespace phaselab
