#pragma once

#include <string>
#include <vector>

#include "phaselab/sweep.hpp"

namespace phaselab {

/// Outcome of one acceptance criterion. residual/tolerance describe the
/// binding sub-check (largest value relative to its tolerance); notes carry
/// flagged parameter points and failure labels.
struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  double residual;
  double tolerance;
  std::string notes;
};

struct VerifyOptions {
  std::vector<GridPoint> grid;  // empty selects the default grid
  double tol = 1e-10;           // oracle propagation tolerance
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

bool all_pass(const std::vector<CriterionResult>& results);

/// One line per criterion: PASS/FAIL, name, measured residual, tolerance.
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace phaselab
