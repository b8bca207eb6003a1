#include "phaselab/closed_forms.hpp"

#include <cmath>
#include <sstream>

namespace phaselab {

namespace {

double z_discriminant(double gamma, double h, double omega) {
  return 9 * h * h + 9 * omega * omega + gamma * gamma + 18 * h * omega -
         3 * h * gamma - 3 * gamma * omega - 3 * omega - 3 * h - gamma + 1;
}

double berry_discriminant(double gamma, double h) {
  return 9 * h * h + gamma * gamma - 3 * h * gamma - 3 * h - gamma + 1;
}

// A discriminant is a real-symmetric invariant and cannot be negative beyond
// rounding; clamp dust, reject anything larger.
double checked_root(double value, const char* what) {
  if (value < 0.0) {
    if (value < -1e-12)
      throw InvalidInput(std::string(what) + ": negative discriminant");
    value = 0.0;
  }
  return std::sqrt(value);
}

void check_index(int index, const char* what) {
  if (index != 1 && index != 2)
    throw InvalidInput(std::string(what) + ": index must be 1 or 2");
}

// Phase of the symmetric-sector state (a, b, b, b)/sqrt(n) under the z drive:
// <A> T - theta with <A> = (omega/2)(3 a^2 - 3 b^2)/n, T = 2 pi / omega,
// theta = pi. The squared norm n = a^2 + 3 b^2 must not vanish.
double sector_phase(double a, double b, double a_scale) {
  const double n = a * a + 3.0 * b * b;
  const double n_scale = a_scale * a_scale + 3.0 * b * b;
  if (n <= 1e-20 * n_scale)
    throw DegenerateFormula(
        "closed-form eigenvector degenerates; use numeric path");
  return principal_value(3.0 * kPi / n * (a * a - b * b) - kPi);
}

}  // namespace

ZModelSpectrum z_spectrum_closed(double gamma, double h, double omega) {
  const double r = z_discriminant(gamma, h, omega);
  const double root = checked_root(r, "z_spectrum_closed");
  ZModelSpectrum s;
  s.r = r;
  s.p1 = -0.5 * (omega + h) - (1.0 + gamma) / 6.0 - root / 3.0;
  s.p2 = -0.5 * (omega + h) - (1.0 + gamma) / 6.0 + root / 3.0;
  s.p34 = 0.5 * (h + omega) + (1.0 + gamma) / 6.0;
  return s;
}

double aa_phase_closed(double gamma, double h, double omega, int index) {
  check_index(index, "aa_phase_closed");
  const double root = checked_root(z_discriminant(gamma, h, omega),
                                   "aa_phase_closed");
  const double sign = index == 1 ? -1.0 : 1.0;
  const double a = gamma + 1.0 - 6.0 * (omega + h) + sign * 2.0 * root;
  const double a_scale =
      std::abs(gamma) + 1.0 + 6.0 * (std::abs(omega) + std::abs(h)) +
      2.0 * root;
  return sector_phase(a, gamma - 1.0, a_scale);
}

std::pair<double, double> x_spectrum_closed(double gamma, double h,
                                            double omega) {
  const double root = std::hypot(h, omega);
  return {(1.0 + gamma - 3.0 * root) / 6.0, (1.0 + gamma + 3.0 * root) / 6.0};
}

double x_holonomy_closed(double h, double omega, int group) {
  check_index(group, "x_holonomy_closed");
  if (h == 0.0 && omega == 0.0)
    throw InvalidInput("x_holonomy_closed: direction undefined at h=omega=0");
  const double ratio = omega / std::hypot(h, omega);
  return group == 1 ? principal_value(kPi * (ratio - 1.0))
                    : principal_value(-kPi * (ratio + 1.0));
}

BerrySpectrum berry_spectrum_closed(double gamma, double h) {
  const double q = berry_discriminant(gamma, h);
  const double root = checked_root(q, "berry_spectrum_closed");
  BerrySpectrum s;
  s.q = q;
  s.lambda1 = -(1.0 + gamma + 3.0 * h + 2.0 * root) / 6.0;
  s.lambda2 = -(1.0 + gamma + 3.0 * h - 2.0 * root) / 6.0;
  return s;
}

double berry_phase_closed(double gamma, double h, int index) {
  check_index(index, "berry_phase_closed");
  const double root =
      checked_root(berry_discriminant(gamma, h), "berry_phase_closed");
  const double sign = index == 1 ? -1.0 : 1.0;
  const double a = 1.0 + gamma - 6.0 * h + sign * 2.0 * root;
  const double a_scale = 1.0 + std::abs(gamma) + 6.0 * std::abs(h) + 2.0 * root;
  return sector_phase(a, gamma - 1.0, a_scale);
}

Eigen::MatrixXd reference_p_matrix(double gamma, double h, double omega) {
  const double s = h + omega;
  const double c = -(1.0 - gamma) / 6.0;
  const double d = -(1.0 + gamma) / 6.0;
  Eigen::MatrixXd p(4, 4);
  p << -1.5 * s, c, c, c,
       c, 0.5 * s, d, d,
       c, d, 0.5 * s, d,
       c, d, d, 0.5 * s;
  return p;
}

Eigen::MatrixXd reference_x_b_matrix(double gamma, double h, double omega) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(8, 8);
  b.topLeftCorner(4, 4) = reference_p_matrix(gamma, h, 0.0);
  b.bottomRightCorner(4, 4) = reference_p_matrix(gamma, -h, 0.0);
  b -= reference_x_drive(omega);
  return b;
}

Eigen::MatrixXd reference_x_drive(double omega) {
  Eigen::MatrixXd pattern(4, 4);
  pattern << 0, 1, 1, 1,
             1, 0, 1, 1,
             1, 1, 0, 1,
             1, 1, 1, 0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(8, 8);
  a.topRightCorner(4, 4) = pattern;
  a.bottomLeftCorner(4, 4) = pattern;
  return 0.5 * omega * a;
}

Eigen::MatrixXd reference_z_drive_block(double omega) {
  Eigen::Vector4d diag(3.0, -1.0, -1.0, -1.0);
  return 0.5 * omega * Eigen::MatrixXd(diag.asDiagonal());
}

Eigen::MatrixXd reference_h_block(double gamma, double h) {
  return reference_p_matrix(gamma, h, 0.0);
}

Eigen::VectorXd z_vector_closed(double gamma, double h, double omega,
                                 int index) {
  check_index(index, "z_vector_closed");
  const double root =
      checked_root(z_discriminant(gamma, h, omega), "z_vector_closed");
  const double sign = index == 1 ? -1.0 : 1.0;
  Eigen::VectorXd v(4);
  v << gamma + 1.0 - 6.0 * (omega + h) + sign * 2.0 * root, gamma - 1.0,
      gamma - 1.0, gamma - 1.0;
  return v;
}

Eigen::VectorXd x_vector_closed(double h, double omega, int group,
                                 int alpha) {
  check_index(group, "x_vector_closed");
  check_index(alpha, "x_vector_closed");
  if (omega == 0.0)
    throw InvalidInput("x_vector_closed: omega must be nonzero");
  const double root = std::hypot(h, omega);
  const double u = group == 1 ? (root - h) / omega : -(h + root) / omega;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
  if (alpha == 1) {
    v(1) = u;
    v(3) = -u;
    v(5) = -1.0;
    v(7) = 1.0;
  } else {
    v(1) = 0.5 * u;
    v(2) = -u;
    v(3) = 0.5 * u;
    v(5) = -0.5;
    v(6) = 1.0;
    v(7) = -0.5;
  }
  return v;
}

Eigen::VectorXd berry_vector_closed(double gamma, double h, int index) {
  check_index(index, "berry_vector_closed");
  const double root =
      checked_root(berry_discriminant(gamma, h), "berry_vector_closed");
  const double sign = index == 1 ? -1.0 : 1.0;
  Eigen::VectorXd v(4);
  v << 1.0 + gamma - 6.0 * h + sign * 2.0 * root, gamma - 1.0, gamma - 1.0,
      gamma - 1.0;
  return v;
}

}  // namespace phaselab
