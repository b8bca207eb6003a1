#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "phaselab/types.hpp"

namespace phaselab {

/// Eigendecomposition of a Hermitian operator with deterministic ordering and
/// gauge: eigenvalues ascending, and in every eigenvector the largest-magnitude
/// component is rotated to be real and positive (ties broken by lowest index).
struct EigenSystem {
  Eigen::VectorXd values;                    // ascending
  Matrix vectors;                            // orthonormal columns, aligned
  std::vector<std::pair<int, int>> groups;   // (first index, size) per cluster
  double group_tol = 0.0;                    // tolerance the clusters were built with
};

/// Default degeneracy clustering tolerance: 1e-9 * (spectral range + 1).
double default_group_tol(const Eigen::VectorXd& values);

/// group_tol <= 0 selects the default tolerance.
EigenSystem hermitian_eig(const HermitianOperator& h, double group_tol = 0.0);

/// exp(-i*H*s) through the eigendecomposition of H.
UnitaryOperator spectral_exp(const HermitianOperator& h, double s);

using Generator = std::function<Matrix(double)>;

/// Time-ordered exponential Texp(int_{t0}^{t1} g(t) dt) by fixed-step 4th-order
/// stepping with step halving until two successive refinements differ by less
/// than tol in max-norm; the finer result is returned.
ComplexMatrix ordered_exp(const Generator& g, double t0, double t1, double tol,
                          int max_depth = 20);

}  // namespace phaselab
