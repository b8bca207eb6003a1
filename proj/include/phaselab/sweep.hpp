#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phaselab/closed_forms.hpp"
#include "phaselab/holonomy.hpp"

namespace phaselab {

struct GridPoint {
  double gamma;
  double h;
  double omega;
};

/// The acceptance grid: gamma in {0, 0.5, 1, 2}, h in {0, 0.3, 1},
/// omega in {0.1, 0.5, 1}; omega fastest, gamma slowest.
std::vector<GridPoint> default_grid();

/// Grid file: one `gamma,h,omega` triple per line, '#' comments allowed.
std::vector<GridPoint> load_grid(const std::string& path);

/// One output row of a parameter sweep. Missing comparisons (degenerate
/// closed form, no matching non-degenerate engine state) are NaN.
struct SweepRecord {
  double gamma;
  double h;
  double omega;
  std::string state_label;
  double b_value;
  double theta;
  double total;
  double dynamical;
  double geometric_closed;
  double geometric_numeric;
  double residual;  // mod-2pi distance between the two geometric columns
};

/// z-model analysis of one non-degenerate block state, closed and numeric
/// sides paired by closed-form eigenvector overlap (eigenvalue fallback when
/// the closed-form vector degenerates).
struct ZStateAnalysis {
  int index;                    // closed-form label, 1 or 2
  double p_closed;              // closed block eigenvalue
  bool closed_valid;            // closed-form normalization nonzero
  double geometric_closed;      // valid only when closed_valid
  bool engine_found;            // a dimension-1 group was matched
  std::optional<CyclicGroup> group;
  PhaseBreakdown engine;        // valid only when engine_found
};

std::vector<ZStateAnalysis> analyze_z_point(const RotatingModel& model,
                                            double group_tol = 0.0);

/// x-model analysis of one degenerate group: both holonomy factors reduced to
/// scalar angle plus scalarity defect.
struct XGroupAnalysis {
  int group_index;           // 1 or 2
  double b_closed;
  bool engine_found;         // a multiplicity-2 cluster was matched
  std::optional<CyclicGroup> group;
  double geometric_closed;
  double geometric_numeric;  // angle of the ordered-exp factor
  double scalar_residual;    // max|U - exp(i angle) I|
  double dynamical_angle;
};

std::vector<XGroupAnalysis> analyze_x_point(const RotatingModel& model,
                                            double group_tol = 0.0);

/// Records of one grid point (two rows: states 1,2 or groups g1,g2).
std::vector<SweepRecord> sweep_point(Axis axis, const GridPoint& pt,
                                     double tol);

/// Sweep over a grid; points are independent and run in parallel, results
/// are merged in grid order. The serial path performs identical arithmetic.
std::vector<SweepRecord> run_sweep(Axis axis,
                                   const std::vector<GridPoint>& grid,
                                   double tol, bool parallel = true);

extern const char* const kSweepCsvHeader;

/// One double at 12 significant digits.
std::string format_double(double v);

std::string emit_csv(const std::vector<SweepRecord>& records);
std::string emit_json(const std::vector<SweepRecord>& records);

/// Inverse of emit_csv (used for round-trip checks and grid files).
std::vector<SweepRecord> parse_csv(const std::string& text);

}  // namespace phaselab
