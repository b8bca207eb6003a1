#include "phaselab/spin_models.hpp"

#include <cmath>

namespace phaselab {

namespace {

Matrix pauli_2x2(Axis axis) {
  Matrix s(2, 2);
  switch (axis) {
    case Axis::x:
      s << 0, 1, 1, 0;
      break;
    case Axis::y:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case Axis::z:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_params(const ModelParams& p) {
  if (!(p.omega > 0.0)) throw InvalidInput("ModelParams: omega must be > 0");
  if (p.n_qubits < 1) throw InvalidInput("ModelParams: n_qubits must be >= 1");
}

}  // namespace

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

HermitianOperator pauli_string(int n_qubits, Axis axis, int site) {
  if (n_qubits < 1) throw InvalidInput("pauli_string: n_qubits must be >= 1");
  if (site < 1 || site > n_qubits)
    throw InvalidInput("pauli_string: site out of range");
  Matrix op = Matrix::Identity(1, 1);
  for (int k = 1; k <= n_qubits; ++k)
    op = kron(op, k == site ? pauli_2x2(axis) : Matrix::Identity(2, 2));
  return HermitianOperator(std::move(op));
}

HermitianOperator collective_spin(int n_qubits, Axis axis) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Matrix s = Matrix::Zero(dim, dim);
  for (int k = 1; k <= n_qubits; ++k) s += pauli_string(n_qubits, axis, k).mat();
  return HermitianOperator(0.5 * s);
}

HermitianOperator lmg_hamiltonian(double gamma, double h) {
  const Matrix sx = collective_spin(3, Axis::x).mat();
  const Matrix sy = collective_spin(3, Axis::y).mat();
  const Matrix sz = collective_spin(3, Axis::z).mat();
  Matrix ht = -(sx * sx + gamma * (sy * sy)) / 3.0 - h * sz;
  // Drop the constant -1/4 (1+gamma).
  ht += 0.25 * (1.0 + gamma) * Matrix::Identity(8, 8);
  return HermitianOperator(std::move(ht));
}

RotatingModel rotating_model(const ModelParams& params) {
  check_params(params);
  if (params.axis == Axis::y)
    throw InvalidInput("rotating_model: unsupported drive axis y");
  if (params.n_qubits != 3)
    throw InvalidInput("rotating_model: LMG models are built on 3 qubits");
  HermitianOperator tilde_h = lmg_hamiltonian(params.gamma, params.h);
  HermitianOperator drive(params.omega *
                          collective_spin(3, params.axis).mat());
  const double period = kTwoPi / params.omega;
  return RotatingModel{std::move(tilde_h), std::move(drive), params, period};
}

UnitaryOperator drive_rotation(const RotatingModel& model, double t) {
  // exp(-i omega t S_axis) = tensor power of exp(-i (omega t / 2) sigma_axis).
  const double half = 0.5 * model.params.omega * t;
  const Matrix r2 = std::cos(half) * Matrix::Identity(2, 2) -
                    Complex(0, 1) * std::sin(half) * pauli_2x2(model.params.axis);
  Matrix r = Matrix::Identity(1, 1);
  for (int k = 0; k < model.params.n_qubits; ++k) r = kron(r, r2);
  return UnitaryOperator(std::move(r));
}

HermitianOperator hamiltonian_at(const RotatingModel& model, double t) {
  const Matrix r = drive_rotation(model, t).mat();
  return HermitianOperator(r * model.tilde_h.mat() * r.adjoint());
}

std::vector<int> parity_basis_permutation(int n_qubits) {
  if (n_qubits != 3)
    throw InvalidInput("parity_basis_permutation: defined for 3 qubits only");
  // {|000>,|011>,|101>,|110>,|111>,|100>,|010>,|001>} in lexicographic indices.
  return {0, 3, 5, 6, 7, 4, 2, 1};
}

Matrix permuted_view(const Matrix& m, const std::vector<int>& perm) {
  const Eigen::Index n = static_cast<Eigen::Index>(perm.size());
  if (m.rows() != n || m.cols() != n)
    throw InvalidInput("permuted_view: size mismatch");
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(perm[i], perm[j]);
  return out;
}

Matrix block_one_view(const Matrix& m) {
  if (m.rows() != 8 || m.cols() != 8)
    throw InvalidInput("block_one_view: expected an 8x8 matrix");
  static const int idx[4] = {0, 3, 5, 6};
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace phaselab
