#include "phaselab/holonomy.hpp"

#include <cmath>
#include <sstream>

namespace phaselab {

HermitianOperator frame_generator(const RotatingModel& model) {
  return HermitianOperator(model.tilde_h.mat() - model.drive.mat());
}

std::vector<CyclicGroup> cyclic_groups(const HermitianOperator& frame_gen,
                                       const UnitaryOperator& monodromy,
                                       double group_tol) {
  const Matrix& b = frame_gen.mat();
  const Matrix& w = monodromy.mat();
  if (b.rows() != w.rows())
    throw InvalidInput("cyclic_groups: dimension mismatch");

  const double comm = max_abs(w * b - b * w);
  if (comm > 1e-9 * (1.0 + max_abs(b))) {
    std::ostringstream os;
    os << "cyclic_groups: drive not compatible with period (commutator "
       << comm << ")";
    throw Error(os.str());
  }

  const EigenSystem sys = hermitian_eig(frame_gen, group_tol);
  std::vector<CyclicGroup> out;
  out.reserve(sys.groups.size());
  for (std::size_t g = 0; g < sys.groups.size(); ++g) {
    const auto [first, size] = sys.groups[g];
    CyclicGroup group;
    group.dimension = size;
    group.states = sys.vectors.middleCols(first, size);
    // Representative eigenvalue: the group mean.
    group.b_value = sys.values.segment(first, size).mean();

    const Matrix action = group.states.adjoint() * w * group.states;
    Complex mean = action.trace() / static_cast<double>(size);
    // Rounding noise in the imaginary part must not flip the branch of the
    // monodromy angle at theta = pi.
    if (std::abs(mean.imag()) <= 1e-12 * std::abs(mean))
      mean = Complex(mean.real(), 0.0);
    const double scalar_defect =
        max_abs(w * group.states - mean * group.states);
    if (scalar_defect > 1e-9 || std::abs(std::abs(mean) - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "cyclic_groups: monodromy is not scalar on group " << g
         << " (b = " << group.b_value << ", defect = " << scalar_defect
         << "); group tolerance may be mis-set";
      throw Error(os.str());
    }
    group.theta = principal_value(-std::arg(mean));
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<CyclicGroup> cyclic_states(const RotatingModel& model,
                                       double group_tol) {
  return cyclic_groups(frame_generator(model),
                       drive_rotation(model, model.period), group_tol);
}

PhaseBreakdown aa_phase(const RotatingModel& model, const CyclicGroup& group) {
  if (group.dimension != 1)
    throw InvalidInput(
        "aa_phase: group is degenerate; use aa_holonomy for the matrix "
        "factors");
  const StateVector phi = group.states.col(0);
  const double t = model.period;
  const double drive_mean =
      std::real(Complex(phi.dot(model.drive.mat() * phi)));
  const double energy_mean =
      std::real(Complex(phi.dot(model.tilde_h.mat() * phi)));
  PhaseBreakdown pb;
  pb.geometric = principal_value(drive_mean * t - group.theta);
  pb.dynamical = principal_value(-energy_mean * t);
  pb.total = principal_value(pb.geometric + pb.dynamical);
  return pb;
}

ComplexMatrix degenerate_connection(const RotatingModel& model,
                                    const CyclicGroup& group) {
  const Matrix mean = group.states.adjoint() * model.drive.mat() * group.states;
  Matrix conn = 0.5 * (mean + Matrix(mean.adjoint()));
  conn -= (group.theta / model.period) *
          Matrix::Identity(group.dimension, group.dimension);
  return ComplexMatrix(std::move(conn));
}

ComplexMatrix degenerate_dynamical(const RotatingModel& model,
                                   const CyclicGroup& group) {
  const Matrix mean =
      group.states.adjoint() * model.tilde_h.mat() * group.states;
  return ComplexMatrix(0.5 * (mean + Matrix(mean.adjoint())));
}

Holonomy aa_holonomy(const RotatingModel& model, const CyclicGroup& group,
                     double tol) {
  const Matrix conn = degenerate_connection(model, group).mat();
  const Generator gen = [&conn](double) -> Matrix {
    return Complex(0, 1) * conn;
  };
  UnitaryOperator geometric(
      ordered_exp(gen, 0.0, model.period, tol).mat());
  UnitaryOperator dynamical = spectral_exp(
      HermitianOperator(degenerate_dynamical(model, group).mat()),
      model.period);
  return Holonomy{std::move(geometric), std::move(dynamical),
                  group.dimension};
}

UnitaryOperator geometric_factor_spectral(const RotatingModel& model,
                                          const CyclicGroup& group) {
  // exp(iAT) = spectral exp(-iA s) at s = -T.
  return spectral_exp(
      HermitianOperator(degenerate_connection(model, group).mat()),
      -model.period);
}

FloquetSplit floquet_split(const RotatingModel& model, double group_tol) {
  const std::vector<CyclicGroup> groups = cyclic_states(model, group_tol);
  const Eigen::Index dim = model.tilde_h.dim();
  Matrix omega_op = Matrix::Zero(dim, dim);
  for (const CyclicGroup& g : groups)
    omega_op += g.theta * (g.states * g.states.adjoint());
  HermitianOperator omega(0.5 * (omega_op + Matrix(omega_op.adjoint())));

  const Matrix b = frame_generator(model).mat();
  HermitianOperator m_op(-b - omega.mat() / model.period);

  const double period = model.period;
  RotatingModel model_copy = model;
  HermitianOperator omega_copy = omega;
  auto z_of_t = [model_copy, omega_copy, period](double t) -> UnitaryOperator {
    const Matrix rot = drive_rotation(model_copy, t).mat();
    const Matrix shift = spectral_exp(omega_copy, -t / period).mat();
    return UnitaryOperator(rot * shift);
  };
  return FloquetSplit{std::move(z_of_t), std::move(m_op), std::move(omega),
                      period};
}

Matrix floquet_connection_fd(const FloquetSplit& split,
                             const CyclicGroup& group, double t,
                             double fd_step) {
  if (!(fd_step > 0.0))
    throw InvalidInput("floquet_connection_fd: fd_step must be positive");
  const Matrix z0 = split.z_of_t(t).mat();
  const Matrix zp = split.z_of_t(t + fd_step).mat();
  const Matrix zm = split.z_of_t(t - fd_step).mat();
  const Matrix dz = (zp - zm) / (2.0 * fd_step);
  return Complex(0, 1) *
         (group.states.adjoint() * (z0.adjoint() * dz) * group.states);
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  return max_abs(a * b - b * a);
}

UnitaryOperator combined_monodromy_factor(const ComplexMatrix& connection,
                                          const ComplexMatrix& dynamical,
                                          double period) {
  const double comm = commutator_norm(connection.mat(), dynamical.mat());
  if (comm > 1e-12) {
    std::ostringstream os;
    os << "combined_monodromy_factor: connection and dynamical one-form do "
          "not commute (max|[A,E]| = "
       << comm << "); the factors cannot be multiplied into U(T)";
    throw Error(os.str());
  }
  const Matrix dyn =
      spectral_exp(HermitianOperator(dynamical.mat()), period).mat();
  const Matrix geo =
      spectral_exp(HermitianOperator(connection.mat()), -period).mat();
  return UnitaryOperator(dyn * geo);
}

ScalarPart scalar_part(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0)
    throw InvalidInput("scalar_part: square matrix required");
  Complex mean = u.trace() / static_cast<double>(u.rows());
  Complex phase = std::abs(mean) > 1e-12 ? mean / std::abs(mean) : Complex(1, 0);
  ScalarPart part;
  part.angle = std::arg(phase);
  part.residual =
      max_abs(u - phase * Matrix::Identity(u.rows(), u.cols()));
  return part;
}

}  // namespace phaselab
