#include "phaselab/propagator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace phaselab {

namespace {

constexpr long kInitialSteps = 64;
constexpr int kMaxDepth = 20;

// RK4 sweep of i d psi/dt = H(t) psi over [0, t] with n steps. When
// energies is non-null it receives <psi|H|psi> at every grid node (n+1
// values), evaluated before each step and once at the final node.
StateVector rk4_state(const TimeHamiltonian& ham, StateVector psi, double t,
                      long n, std::vector<double>* energies) {
  const Complex mi(0, -1);
  const double h = t / static_cast<double>(n);
  Matrix h_left = ham(0.0);
  if (energies) {
    energies->clear();
    energies->reserve(static_cast<std::size_t>(n) + 1);
  }
  for (long i = 0; i < n; ++i) {
    const double tl = static_cast<double>(i) * h;
    const double tr = static_cast<double>(i + 1) * h;
    if (energies)
      energies->push_back(std::real(Complex(psi.dot(h_left * psi))));
    const Matrix h_mid = ham(tl + 0.5 * h);
    const Matrix h_right = ham(tr);
    const StateVector k1 = mi * (h_left * psi);
    const StateVector k2 = mi * (h_mid * (psi + (0.5 * h) * k1));
    const StateVector k3 = mi * (h_mid * (psi + (0.5 * h) * k2));
    const StateVector k4 = mi * (h_right * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_left = h_right;
  }
  if (energies) energies->push_back(std::real(Complex(psi.dot(h_left * psi))));
  return psi;
}

Matrix propagate_columns(const TimeHamiltonian& ham, int dim, double t, long n,
                         bool parallel) {
  Matrix u(dim, dim);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < dim; ++j) {
    StateVector e = StateVector::Zero(dim);
    e(j) = 1.0;
    u.col(j) = rk4_state(ham, std::move(e), t, n, nullptr);
  }
  return u;
}

[[noreturn]] void refinement_failure(const char* what, double res,
                                     double prev) {
  std::ostringstream os;
  os << what << ": refinement ceiling reached (last residuals " << res << ", "
     << prev << ")";
  throw ConvergenceError(os.str(), res, prev);
}

void check_propagation_input(double t, double tol) {
  if (t < 0.0) throw InvalidInput("propagator: t must be non-negative");
  if (!(tol > 0.0)) throw InvalidInput("propagator: tol must be positive");
}

void check_normalized(const StateVector& psi0) {
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw InvalidInput("propagator: initial state must be normalized");
}

double simpson(const std::vector<double>& f, double step) {
  const std::size_t n = f.size() - 1;  // interval count, even by construction
  double odd = 0.0, even = 0.0;
  for (std::size_t k = 1; k < n; k += 2) odd += f[k];
  for (std::size_t k = 2; k < n; k += 2) even += f[k];
  return step / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

}  // namespace

TimeHamiltonian model_hamiltonian(const RotatingModel& model) {
  return [model](double t) -> Matrix {
    const Matrix r = drive_rotation(model, t).mat();
    return r * model.tilde_h.mat() * r.adjoint();
  };
}

UnitaryOperator evolution_operator(const TimeHamiltonian& ham, int dim,
                                   double t, double tol, bool parallel,
                                   int max_depth) {
  check_propagation_input(t, tol);
  if (t == 0.0) return UnitaryOperator(Matrix::Identity(dim, dim));
  long n = kInitialSteps;
  Matrix coarse = propagate_columns(ham, dim, t, n, parallel);
  double prev_res = std::numeric_limits<double>::infinity();
  double res = prev_res;
  for (int depth = 0; depth < max_depth; ++depth) {
    n *= 2;
    Matrix fine = propagate_columns(ham, dim, t, n, parallel);
    prev_res = res;
    res = max_abs(fine - coarse);
    if (res < tol) return UnitaryOperator(std::move(fine));
    coarse = std::move(fine);
  }
  refinement_failure("evolution_operator", res, prev_res);
}

UnitaryOperator evolution_operator(const RotatingModel& model, double t,
                                   double tol) {
  return evolution_operator(model_hamiltonian(model), model.tilde_h.dim(), t,
                            tol, true);
}

UnitaryOperator evolution_operator_serial(const RotatingModel& model, double t,
                                          double tol) {
  return evolution_operator(model_hamiltonian(model), model.tilde_h.dim(), t,
                            tol, false);
}

PropagationResult propagate_state(const RotatingModel& model,
                                  const StateVector& psi0, double t,
                                  double tol, long sample_stride) {
  check_propagation_input(t, tol);
  check_normalized(psi0);
  const TimeHamiltonian ham = model_hamiltonian(model);

  PropagationResult result;
  if (t == 0.0) {
    result.final_state = psi0;
    result.achieved_tol = 0.0;
    return result;
  }

  long n = kInitialSteps;
  StateVector coarse = rk4_state(ham, psi0, t, n, nullptr);
  double prev_res = std::numeric_limits<double>::infinity();
  double res = prev_res;
  for (int depth = 0; depth < kMaxDepth; ++depth) {
    n *= 2;
    StateVector fine = rk4_state(ham, psi0, t, n, nullptr);
    prev_res = res;
    res = (fine - coarse).cwiseAbs().maxCoeff();
    if (res < tol) {
      result.final_state = std::move(fine);
      result.achieved_tol = res;
      if (sample_stride > 0) {
        // Re-run the accepted grid, recording the requested nodes.
        const double step = t / static_cast<double>(n);
        StateVector psi = psi0;
        result.trajectory_samples.emplace_back(0.0, psi);
        for (long i = 0; i < n; i += sample_stride) {
          const long chunk = std::min(sample_stride, n - i);
          const double t0 = static_cast<double>(i) * step;
          const TimeHamiltonian shifted = [&ham, t0](double s) {
            return ham(t0 + s);
          };
          psi = rk4_state(shifted, std::move(psi),
                          static_cast<double>(chunk) * step, chunk, nullptr);
          result.trajectory_samples.emplace_back(
              static_cast<double>(i + chunk) * step, psi);
        }
      }
      return result;
    }
    coarse = std::move(fine);
  }
  refinement_failure("propagate_state", res, prev_res);
}

double total_phase(const RotatingModel& model, const StateVector& psi0,
                   double tol) {
  const PropagationResult res =
      propagate_state(model, psi0, model.period, tol);
  const Complex overlap = psi0.dot(res.final_state);
  if (std::abs(overlap) < 1.0 - 1e-6) {
    std::ostringstream os;
    os << "total_phase: initial state is not cyclic; |<psi0|U(T)|psi0>| = "
       << std::abs(overlap);
    throw Error(os.str());
  }
  return std::arg(overlap);
}

double dynamical_phase_integral(const RotatingModel& model,
                                const StateVector& psi0, double tol) {
  check_propagation_input(model.period, tol);
  check_normalized(psi0);
  const TimeHamiltonian ham = model_hamiltonian(model);
  const double t = model.period;

  long n = kInitialSteps;
  std::vector<double> energies;
  StateVector coarse = rk4_state(ham, psi0, t, n, &energies);
  double delta = -simpson(energies, t / static_cast<double>(n));
  double prev_res = std::numeric_limits<double>::infinity();
  double res = prev_res;
  for (int depth = 0; depth < kMaxDepth; ++depth) {
    n *= 2;
    StateVector fine = rk4_state(ham, psi0, t, n, &energies);
    const double delta_fine = -simpson(energies, t / static_cast<double>(n));
    prev_res = res;
    res = std::max((fine - coarse).cwiseAbs().maxCoeff(),
                   std::abs(delta_fine - delta));
    delta = delta_fine;
    if (res < tol) return delta;
    coarse = std::move(fine);
  }
  refinement_failure("dynamical_phase_integral", res, prev_res);
}

PhaseBreakdown geometric_phase_oracle(const RotatingModel& model,
                                      const StateVector& psi0, double tol) {
  const double chi = total_phase(model, psi0, tol);
  const double delta = dynamical_phase_integral(model, psi0, tol);
  PhaseBreakdown pb;
  pb.total = principal_value(chi);
  pb.dynamical = principal_value(delta);
  pb.geometric = principal_value(chi - delta);
  return pb;
}

}  // namespace phaselab
