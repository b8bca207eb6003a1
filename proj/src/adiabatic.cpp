#include "phaselab/adiabatic.hpp"

#include <cmath>
#include <sstream>

#include "phaselab/matrix_core.hpp"

namespace phaselab {

namespace {

void require_z_axis(const RotatingModel& model, const char* what) {
  if (model.params.axis != Axis::z) {
    std::ostringstream os;
    os << what << ": the adiabatic block analysis covers the z-drive family";
    throw InvalidInput(os.str());
  }
}

// 4x4 restrictions of H~ and A to the parity block {|000>,|011>,|101>,|110>}.
Matrix h_block(const RotatingModel& model) {
  return block_one_view(model.tilde_h.mat());
}

Matrix drive_block(const RotatingModel& model) {
  return block_one_view(model.drive.mat());
}

}  // namespace

InstantaneousFrame instantaneous_frame(const RotatingModel& model, double t) {
  const EigenSystem sys = hermitian_eig(model.tilde_h);
  InstantaneousFrame frame;
  frame.time = t;
  frame.values = sys.values;
  frame.vectors = drive_rotation(model, t).mat() * sys.vectors;
  return frame;
}

InstantaneousFrame single_valued_frame(const RotatingModel& model, double t) {
  InstantaneousFrame frame = instantaneous_frame(model, t);
  const double phase = kPi * t / model.period;
  frame.vectors *= Complex(std::cos(phase), std::sin(phase));
  return frame;
}

std::vector<BerryLevel> berry_levels(const RotatingModel& model,
                                     double group_tol) {
  require_z_axis(model, "berry_levels");
  const EigenSystem sys =
      hermitian_eig(HermitianOperator(h_block(model)), group_tol);
  std::vector<BerryLevel> levels;
  levels.reserve(sys.groups.size());
  for (const auto& [first, size] : sys.groups) {
    BerryLevel level;
    level.value = sys.values.segment(first, size).mean();
    level.states_prime = sys.vectors.middleCols(first, size);
    level.dimension = size;
    levels.push_back(std::move(level));
  }
  return levels;
}

double berry_phase(const RotatingModel& model, const BerryLevel& level) {
  require_z_axis(model, "berry_phase");
  if (level.dimension != 1)
    throw InvalidInput(
        "berry_phase: level is degenerate; use wilczek_zee_holonomy");
  const StateVector v = level.states_prime.col(0);
  const double drive_mean = std::real(Complex(v.dot(drive_block(model) * v)));
  return principal_value(drive_mean * model.period - kPi);
}

double berry_phase(const RotatingModel& model, int index) {
  const std::vector<BerryLevel> levels = berry_levels(model);
  if (index < 1 || index > static_cast<int>(levels.size()))
    throw InvalidInput("berry_phase: index out of range");
  return berry_phase(model, levels[index - 1]);
}

Holonomy wilczek_zee_holonomy(const RotatingModel& model,
                              const BerryLevel& level) {
  require_z_axis(model, "wilczek_zee_holonomy");
  const Matrix mean =
      level.states_prime.adjoint() * drive_block(model) * level.states_prime;
  Matrix conn = 0.5 * (mean + Matrix(mean.adjoint()));
  conn -= (kPi / model.period) *
          Matrix::Identity(level.dimension, level.dimension);
  const Generator gen = [&conn](double) -> Matrix {
    return Complex(0, 1) * conn;
  };
  UnitaryOperator geometric(
      ordered_exp(gen, 0.0, model.period, 1e-12).mat());
  const Matrix energy =
      level.states_prime.adjoint() * h_block(model) * level.states_prime;
  UnitaryOperator dynamical = spectral_exp(
      HermitianOperator(0.5 * (energy + Matrix(energy.adjoint()))),
      model.period);
  return Holonomy{std::move(geometric), std::move(dynamical),
                  level.dimension};
}

double berry_connection_sampled(const RotatingModel& model, int index,
                                double t, double fd_step) {
  require_z_axis(model, "berry_connection_sampled");
  if (!(fd_step > 0.0))
    throw InvalidInput("berry_connection_sampled: fd_step must be positive");
  const std::vector<BerryLevel> levels = berry_levels(model);
  if (index < 1 || index > static_cast<int>(levels.size()))
    throw InvalidInput("berry_connection_sampled: index out of range");
  const BerryLevel& level = levels[index - 1];
  if (level.dimension != 1)
    throw InvalidInput("berry_connection_sampled: level is degenerate");

  // Embed the block eigenvector into the full space, then build the smooth
  // single-valued frame column by rotation, as single_valued_frame does.
  static const int idx[4] = {0, 3, 5, 6};
  StateVector full = StateVector::Zero(8);
  for (int i = 0; i < 4; ++i) full(idx[i]) = level.states_prime(i, 0);

  auto column_at = [&](double s) -> StateVector {
    const double phase = kPi * s / model.period;
    return Complex(std::cos(phase), std::sin(phase)) *
           (drive_rotation(model, s).mat() * full);
  };
  const StateVector n0 = column_at(t);
  // 4th-order central stencil.
  const StateVector dn =
      (-column_at(t + 2.0 * fd_step) + 8.0 * column_at(t + fd_step) -
       8.0 * column_at(t - fd_step) + column_at(t - 2.0 * fd_step)) /
      (12.0 * fd_step);
  return std::real(Complex(0, 1) * n0.dot(dn));
}

namespace {

double adiabaticity_metric_impl(const RotatingModel& model, bool square_gap) {
  const EigenSystem sys = hermitian_eig(model.tilde_h);
  if (sys.groups.size() < 2)
    throw Error("adiabaticity_metric: spectrum has no distinct pair");
  const Matrix dhdt =
      Complex(0, -1) *
      (model.drive.mat() * model.tilde_h.mat() -
       model.tilde_h.mat() * model.drive.mat());

  double metric = 0.0;
  const int n = static_cast<int>(sys.values.size());
  std::vector<int> group_of(n);
  for (int g = 0; g < static_cast<int>(sys.groups.size()); ++g)
    for (int k = 0; k < sys.groups[g].second; ++k)
      group_of[sys.groups[g].first + k] = g;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      if (group_of[m] == group_of[k]) continue;
      const double gap = std::abs(sys.values(k) - sys.values(m));
      const double num = std::abs(
          Complex(sys.vectors.col(m).dot(dhdt * sys.vectors.col(k))));
      metric = std::max(metric, num / (square_gap ? gap * gap : gap));
    }
  return metric;
}

}  // namespace

double adiabaticity_metric(const RotatingModel& model) {
  return adiabaticity_metric_impl(model, false);
}

double adiabaticity_metric_gap_squared(const RotatingModel& model) {
  return adiabaticity_metric_impl(model, true);
}

}  // namespace phaselab
