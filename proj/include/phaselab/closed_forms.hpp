#pragma once

#include <utility>

#include "phaselab/types.hpp"

namespace phaselab {

/// Closed-form spectrum of the z-drive block P(gamma, h, omega):
/// p1 <= p2 non-degenerate, p34 doubly degenerate, r the discriminant.
struct ZModelSpectrum {
  double r;
  double p1;
  double p2;
  double p34;
};

ZModelSpectrum z_spectrum_closed(double gamma, double h, double omega);

/// Closed-form non-degenerate A-A phase of the z-model block state `index`
/// (1 or 2), as a principal value. Throws DegenerateFormula when the
/// closed-form eigenvector has vanishing norm.
double aa_phase_closed(double gamma, double h, double omega, int index);

/// The two doubly degenerate eigenvalues (B1 <= B2) of the x-drive frame
/// generator.
std::pair<double, double> x_spectrum_closed(double gamma, double h,
                                            double omega);

/// Scalar holonomy angle of x-model degenerate group 1 or 2; the geometric
/// factor is exp(i * angle) * I_2. Principal value.
double x_holonomy_closed(double h, double omega, int group);

/// Closed-form spectrum of the non-degenerate pair of the 4x4 H~ block.
struct BerrySpectrum {
  double q;
  double lambda1;
  double lambda2;
};

BerrySpectrum berry_spectrum_closed(double gamma, double h);

/// Closed-form Berry phase of block state `index` (1 or 2), principal value.
/// Normalizations are the exact squared norms of the closed-form eigenvectors.
double berry_phase_closed(double gamma, double h, int index);

// --- reference matrices in the parity-ordered basis ---

/// 4x4 block P(gamma, h, omega) of the z-model frame generator.
Eigen::MatrixXd reference_p_matrix(double gamma, double h, double omega);

/// 8x8 x-model frame generator B = H~ - omega*Sx.
Eigen::MatrixXd reference_x_b_matrix(double gamma, double h, double omega);

/// 8x8 x-model drive omega*Sx.
Eigen::MatrixXd reference_x_drive(double omega);

/// 4x4 block of the z-model drive: (omega/2) diag(3,-1,-1,-1).
Eigen::MatrixXd reference_z_drive_block(double omega);

/// 4x4 block of H~ (equals P(gamma, h, 0)).
Eigen::MatrixXd reference_h_block(double gamma, double h);

// --- closed-form eigenvectors, unnormalized (parity-ordered components) ---

/// z-model block cyclic state `index` (1 or 2); may be the zero vector at a
/// degenerate parameter point.
Eigen::VectorXd z_vector_closed(double gamma, double h, double omega,
                                 int index);

/// x-model degenerate cyclic state, group 1|2, alpha 1|2; 8 components.
Eigen::VectorXd x_vector_closed(double h, double omega, int group, int alpha);

/// H~ block eigenvector `index` (1 or 2) of the adiabatic analysis.
Eigen::VectorXd berry_vector_closed(double gamma, double h, int index);

}  // namespace phaselab
