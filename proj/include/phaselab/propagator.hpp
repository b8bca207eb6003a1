#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "phaselab/holonomy.hpp"
#include "phaselab/spin_models.hpp"

namespace phaselab {

using TimeHamiltonian = std::function<Matrix(double)>;

/// Result of one converged state propagation.
struct PropagationResult {
  StateVector final_state;
  std::vector<std::pair<double, StateVector>> trajectory_samples;
  double achieved_tol;
};

/// H(t) of the model as a plain callable (no per-call certification).
TimeHamiltonian model_hamiltonian(const RotatingModel& model);

/// Schrodinger propagator U(t) integrated column by column with fixed-step
/// 4th-order steps and global step halving until two successive refinements
/// differ by less than tol; the finer grid wins. Columns are independent and
/// run in parallel; the serial variant performs identical arithmetic and is
/// kept as the reference kernel.
UnitaryOperator evolution_operator(const RotatingModel& model, double t,
                                   double tol);
UnitaryOperator evolution_operator_serial(const RotatingModel& model, double t,
                                          double tol);

/// Generic-Hamiltonian variants, used where the integrand is not a rotating
/// model (constant-H cross-checks).
UnitaryOperator evolution_operator(const TimeHamiltonian& ham, int dim,
                                   double t, double tol, bool parallel = true,
                                   int max_depth = 20);

/// Converged single-state propagation; sample_stride > 0 records every
/// sample_stride-th grid node (plus both ends) in trajectory_samples.
PropagationResult propagate_state(const RotatingModel& model,
                                  const StateVector& psi0, double t,
                                  double tol, long sample_stride = 0);

/// Total phase chi = arg <psi0|U(T)|psi0> of a cyclic initial state.
/// Requires |<psi0|U(T)|psi0>| >= 1 - 1e-6.
double total_phase(const RotatingModel& model, const StateVector& psi0,
                   double tol);

/// Dynamical phase -int_0^T <psi(t)|H(t)|psi(t)> dt by composite Simpson
/// quadrature on the accepted propagation grid. Returned unreduced.
double dynamical_phase_integral(const RotatingModel& model,
                                const StateVector& psi0, double tol);

/// Geometric phase from first principles: principal value of chi - delta.
PhaseBreakdown geometric_phase_oracle(const RotatingModel& model,
                                      const StateVector& psi0, double tol);

}  // namespace phaselab
