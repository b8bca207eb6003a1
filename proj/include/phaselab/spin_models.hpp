#pragma once

#include <vector>

#include "phaselab/types.hpp"

namespace phaselab {

enum class Axis { x, y, z };

const char* axis_name(Axis axis);

/// Parameters of one rotating-frame LMG family member.
/// gamma: anisotropy; h: field strength (hbar = 1); omega: drive angular
/// velocity (> 0); axis: drive axis, z or x for the built-in models.
struct ModelParams {
  double gamma = 0.0;
  double h = 0.0;
  double omega = 1.0;
  Axis axis = Axis::z;
  int n_qubits = 3;
};

/// The pair (H~, A) with A = omega * S_axis and period T = 2*pi/omega.
/// The time-dependent Hamiltonian is H(t) = exp(-iAt) H~ exp(iAt).
struct RotatingModel {
  HermitianOperator tilde_h;
  HermitianOperator drive;
  ModelParams params;
  double period;
};

/// Pauli operator on `site` (1-based), identity elsewhere; dimension 2^n.
/// Basis convention: |0> is spin up, site 1 is the slowest tensor index.
HermitianOperator pauli_string(int n_qubits, Axis axis, int site);

/// Collective spin S_axis = (1/2) sum_k sigma_axis^k.
HermitianOperator collective_spin(int n_qubits, Axis axis);

/// Three-qubit LMG Hamiltonian -1/3 (Sx^2 + gamma Sy^2) - h Sz with the
/// constant -1/4 (1+gamma) dropped. Equals the pairwise form
/// -1/6 sum_{j<k} (sx^j sx^k + gamma sy^j sy^k) - h/2 sum_k sz^k.
HermitianOperator lmg_hamiltonian(double gamma, double h);

RotatingModel rotating_model(const ModelParams& params);

/// exp(-iAt) in closed form (tensor power of a single-qubit rotation).
UnitaryOperator drive_rotation(const RotatingModel& model, double t);

/// H(t) = exp(-iAt) H~ exp(iAt); isospectral with H~, H(0) = H~ exactly.
HermitianOperator hamiltonian_at(const RotatingModel& model, double t);

/// Lexicographic index of each vector of the parity-ordered basis
/// {|000>,|011>,|101>,|110>,|111>,|100>,|010>,|001>}. Only n_qubits = 3.
std::vector<int> parity_basis_permutation(int n_qubits);

/// View of a matrix in the permuted basis: out(i,j) = m(perm[i], perm[j]).
Matrix permuted_view(const Matrix& m, const std::vector<int>& perm);

/// 4x4 restriction of an 8x8 matrix to the first permuted-basis block
/// {|000>,|011>,|101>,|110>} (a parity-invariant subspace of the LMG model).
Matrix block_one_view(const Matrix& m);

}  // namespace phaselab
