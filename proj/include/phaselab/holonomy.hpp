#pragma once

#include <functional>
#include <vector>

#include "phaselab/matrix_core.hpp"
#include "phaselab/spin_models.hpp"

namespace phaselab {

/// One eigenvalue group of the frame generator B: orthonormal cyclic states
/// phi_{n,alpha} with B phi = b phi, on which the monodromy exp(-iAT) acts as
/// the scalar exp(-i theta).
struct CyclicGroup {
  double b_value;
  Matrix states;   // dim x f, orthonormal columns
  double theta;    // monodromy angle, principal value in (-pi, pi]
  int dimension;   // f
};

/// Scalar phase split of a cyclic evolution, all principal values in
/// (-pi, pi], with geometric = total - dynamical (mod 2 pi).
struct PhaseBreakdown {
  double total;
  double dynamical;
  double geometric;
};

/// The two f x f unitary factors of a degenerate group.
struct Holonomy {
  UnitaryOperator geometric_factor;
  UnitaryOperator dynamical_factor;
  int group_dimension;
};

/// U(t) = Z(t) exp(iMt) with Z T-periodic, Z(0) = I, and M constant
/// Hermitian. omega_operator is the spectral shift used to periodize the
/// drive rotation: Z(t) = exp(-iAt) exp(i Omega t / T), M = -B - Omega/T.
struct FloquetSplit {
  std::function<UnitaryOperator(double)> z_of_t;
  HermitianOperator m_operator;
  HermitianOperator omega_operator;
  double period;
};

/// B = H~ - A.
HermitianOperator frame_generator(const RotatingModel& model);

/// Eigenvalue groups of a frame generator whose monodromy acts as a scalar on
/// each group. Checks that the monodromy commutes with the generator.
std::vector<CyclicGroup> cyclic_groups(const HermitianOperator& frame_gen,
                                       const UnitaryOperator& monodromy,
                                       double group_tol = 0.0);

/// Cyclic-state discovery for a rotating model: groups of B = H~ - A under
/// the exact monodromy exp(-iAT).
std::vector<CyclicGroup> cyclic_states(const RotatingModel& model,
                                       double group_tol = 0.0);

/// Non-degenerate A-A phase split of a dimension-1 group:
/// geometric = <phi|A|phi> T - theta, dynamical = -<phi|H~|phi> T.
PhaseBreakdown aa_phase(const RotatingModel& model, const CyclicGroup& group);

/// Degenerate connection matrix <phi_a|A|phi_b> - (theta/T) delta_ab.
ComplexMatrix degenerate_connection(const RotatingModel& model,
                                    const CyclicGroup& group);

/// Dynamical one-form <phi_a|H~|phi_b>.
ComplexMatrix degenerate_dynamical(const RotatingModel& model,
                                   const CyclicGroup& group);

/// Geometric factor Texp(i int A dt) over one period (via ordered_exp) and
/// dynamical factor exp(-iET).
Holonomy aa_holonomy(const RotatingModel& model, const CyclicGroup& group,
                     double tol = 1e-12);

/// The constant-connection route to the geometric factor: exp(iAT) computed
/// spectrally. Cross-check partner of the ordered_exp route.
UnitaryOperator geometric_factor_spectral(const RotatingModel& model,
                                          const CyclicGroup& group);

FloquetSplit floquet_split(const RotatingModel& model, double group_tol = 0.0);

/// Connection recomputed from the Floquet split, i <m_a| Z^dag dZ/dt |m_b>,
/// with dZ/dt by central differences of step fd_step.
Matrix floquet_connection_fd(const FloquetSplit& split,
                             const CyclicGroup& group, double t,
                             double fd_step);

/// max|AB - BA|.
double commutator_norm(const Matrix& a, const Matrix& b);

/// Product exp(-iET) exp(iAT), admitted only when the connection and the
/// dynamical one-form commute (max|[A,E]| <= 1e-12); throws otherwise,
/// reporting the commutator norm.
UnitaryOperator combined_monodromy_factor(const ComplexMatrix& connection,
                                          const ComplexMatrix& dynamical,
                                          double period);

/// Scalar decomposition of a square matrix: angle of the trace-mean phase and
/// the max-norm distance from that scalar multiple of the identity.
struct ScalarPart {
  double angle;
  double residual;
};

ScalarPart scalar_part(const Matrix& u);

}  // namespace phaselab
