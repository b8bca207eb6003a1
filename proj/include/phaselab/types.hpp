#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phaselab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precondition or construction-invariant violation.
struct InvalidInput : Error {
  using Error::Error;
};

/// Iterative refinement hit its ceiling; carries the last two residuals.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double last, double previous)
      : Error(msg), last_residual(last), previous_residual(previous) {}
  double last_residual;
  double previous_residual;
};

/// A closed-form eigenvector expression collapsed to the zero vector.
struct DegenerateFormula : Error {
  using Error::Error;
};

/// Max-norm over entries.
inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Reduce an angle to its principal value in (-pi, pi].
inline double principal_value(double angle) {
  double a = std::remainder(angle, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

/// Distance between two angles mod 2*pi, in [0, pi].
inline double angle_distance(double a, double b) {
  return std::abs(principal_value(a - b));
}

/// Square complex matrix with all entries finite.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }

 private:
  Matrix m_;
};

/// Matrix certified Hermitian at construction:
/// max|M - M^dag| <= 1e-12 * max(1, max|M|).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);

  int dim() const { return m_.dim(); }
  const Matrix& mat() const { return m_.mat(); }

 private:
  ComplexMatrix m_;
};

/// Matrix certified unitary at construction: max|U^dag U - I| <= 1e-9.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix m);

  int dim() const { return m_.dim(); }
  const Matrix& mat() const { return m_.mat(); }
  /// max|U^dag U - I|, recomputed.
  double unitarity_defect() const;

 private:
  ComplexMatrix m_;
};

}  // namespace phaselab
