#pragma once

#include <vector>

#include "phaselab/holonomy.hpp"
#include "phaselab/spin_models.hpp"

namespace phaselab {

/// Eigenframe of H(t) in a fixed gauge: H~ is diagonalized once and rotated
/// by exp(-iAt); the eigenvalues are time independent.
struct InstantaneousFrame {
  double time;
  Eigen::VectorXd values;
  Matrix vectors;  // orthonormal columns aligned with values
};

InstantaneousFrame instantaneous_frame(const RotatingModel& model, double t);

/// Frame with the single-valuedness correction exp(i pi t / T); satisfies the
/// instantaneous eigen-equation at every t and coincides with itself at t = T.
InstantaneousFrame single_valued_frame(const RotatingModel& model, double t);

/// One eigenvalue cluster of the H~ block of the z-drive family, carrying the
/// block eigenvectors |n>' of the adiabatic analysis.
struct BerryLevel {
  double value;
  Matrix states_prime;  // 4 x f block eigenvectors
  int dimension;
};

/// Eigenvalue clusters of the 4x4 drive-invariant block of H~, ascending.
/// Only the z-drive family is covered by the adiabatic analysis.
std::vector<BerryLevel> berry_levels(const RotatingModel& model,
                                     double group_tol = 0.0);

/// Berry phase <n'|A|n'> T - pi of a non-degenerate block level.
double berry_phase(const RotatingModel& model, const BerryLevel& level);

/// Convenience: 1-based index into berry_levels (ascending).
double berry_phase(const RotatingModel& model, int index);

/// Wilczek-Zee factor of a degenerate block level: Texp(i int A dt) with
/// A_ab = <n_a'|A|n_b>' - (pi/T) delta_ab.
Holonomy wilczek_zee_holonomy(const RotatingModel& model,
                              const BerryLevel& level);

/// Sampled Berry connection i <n(t)|d/dt|n(t)> of block level `index` from
/// central differences of the single-valued frame.
double berry_connection_sampled(const RotatingModel& model, int index,
                                double t, double fd_step);

/// Adiabaticity diagnostic, first power of the gap in the denominator:
/// max over distinct-eigenvalue pairs of
/// |<m|dH/dt|n>| / |E_n - E_m| at t = 0, with dH/dt|_0 = -i[A, H~].
double adiabaticity_metric(const RotatingModel& model);

/// Same numerator over the squared gap (the textbook form).
double adiabaticity_metric_gap_squared(const RotatingModel& model);

}  // namespace phaselab
