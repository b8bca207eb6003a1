#include "phaselab/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace phaselab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Lexicographic indices of the even-parity block {|000>,|011>,|101>,|110>}.
constexpr int kBlockOneLex[4] = {0, 3, 5, 6};

StateVector embed_block_one(const Eigen::VectorXd& v4) {
  StateVector full = StateVector::Zero(8);
  for (int i = 0; i < 4; ++i) full(kBlockOneLex[i]) = v4(i);
  return full;
}

const CyclicGroup* match_by_overlap(const std::vector<CyclicGroup>& groups,
                                    const StateVector& target) {
  const CyclicGroup* best = nullptr;
  double best_score = 0.0;
  for (const CyclicGroup& g : groups) {
    if (g.dimension != 1) continue;
    const double score = std::abs(Complex(target.dot(g.states.col(0))));
    if (score > best_score) {
      best_score = score;
      best = &g;
    }
  }
  return best_score > 0.5 ? best : nullptr;
}

const CyclicGroup* match_by_eigenvalue(const std::vector<CyclicGroup>& groups,
                                       double b, int dimension,
                                       bool exact_dimension = true) {
  const CyclicGroup* best = nullptr;
  double best_gap = 1e-6 * (1.0 + std::abs(b));
  for (const CyclicGroup& g : groups) {
    if (exact_dimension ? g.dimension != dimension : g.dimension < dimension)
      continue;
    const double gap = std::abs(g.b_value - b);
    if (gap < best_gap) {
      best_gap = gap;
      best = &g;
    }
  }
  return best;
}

}  // namespace

std::vector<GridPoint> default_grid() {
  static const double gammas[] = {0.0, 0.5, 1.0, 2.0};
  static const double hs[] = {0.0, 0.3, 1.0};
  static const double omegas[] = {0.1, 0.5, 1.0};
  std::vector<GridPoint> grid;
  grid.reserve(36);
  for (double g : gammas)
    for (double h : hs)
      for (double w : omegas) grid.push_back({g, h, w});
  return grid;
}

std::vector<GridPoint> load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("load_grid: cannot open " + path);
  std::vector<GridPoint> grid;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    GridPoint pt;
    char c1 = 0, c2 = 0;
    std::istringstream row(line);
    if (!(row >> pt.gamma >> c1 >> pt.h >> c2 >> pt.omega) || c1 != ',' ||
        c2 != ',')
      throw InvalidInput("load_grid: bad line '" + line + "'");
    grid.push_back(pt);
  }
  if (grid.empty()) throw InvalidInput("load_grid: empty grid " + path);
  return grid;
}

std::vector<ZStateAnalysis> analyze_z_point(const RotatingModel& model,
                                            double group_tol) {
  if (model.params.axis != Axis::z)
    throw InvalidInput("analyze_z_point: model must be z-driven");
  const double gamma = model.params.gamma;
  const double h = model.params.h;
  const double omega = model.params.omega;
  const ZModelSpectrum zs = z_spectrum_closed(gamma, h, omega);
  const std::vector<CyclicGroup> groups = cyclic_states(model, group_tol);

  std::vector<ZStateAnalysis> out;
  for (int index = 1; index <= 2; ++index) {
    ZStateAnalysis a;
    a.index = index;
    a.p_closed = index == 1 ? zs.p1 : zs.p2;
    a.closed_valid = true;
    a.geometric_closed = kNaN;
    try {
      a.geometric_closed = aa_phase_closed(gamma, h, omega, index);
    } catch (const DegenerateFormula&) {
      a.closed_valid = false;
    }

    const CyclicGroup* matched = nullptr;
    if (a.closed_valid) {
      Eigen::VectorXd closed_vec = z_vector_closed(gamma, h, omega, index);
      closed_vec.normalize();
      matched = match_by_overlap(groups, embed_block_one(closed_vec));
    }
    if (!matched) matched = match_by_eigenvalue(groups, a.p_closed, 1);

    a.engine_found = matched != nullptr;
    if (matched) {
      a.group = *matched;
      a.engine = aa_phase(model, *matched);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<XGroupAnalysis> analyze_x_point(const RotatingModel& model,
                                            double group_tol) {
  if (model.params.axis != Axis::x)
    throw InvalidInput("analyze_x_point: model must be x-driven");
  const double h = model.params.h;
  const double omega = model.params.omega;
  const auto [b1, b2] =
      x_spectrum_closed(model.params.gamma, h, omega);
  const std::vector<CyclicGroup> groups = cyclic_states(model, group_tol);

  std::vector<XGroupAnalysis> out;
  for (int k = 1; k <= 2; ++k) {
    XGroupAnalysis a;
    a.group_index = k;
    a.b_closed = k == 1 ? b1 : b2;
    a.geometric_closed = x_holonomy_closed(h, omega, k);
    a.geometric_numeric = kNaN;
    a.scalar_residual = kNaN;
    a.dynamical_angle = kNaN;

    // Accidental symmetric-sector collisions can enlarge the closed-form doublet
    // to a bigger cluster; the scalar factor claim still covers it.
    const CyclicGroup* matched =
        match_by_eigenvalue(groups, a.b_closed, 2, false);
    a.engine_found = matched != nullptr;
    if (matched) {
      a.group = *matched;
      const Holonomy hol = aa_holonomy(model, *matched);
      const ScalarPart geo = scalar_part(hol.geometric_factor.mat());
      a.geometric_numeric = geo.angle;
      a.scalar_residual = geo.residual;
      a.dynamical_angle = scalar_part(hol.dynamical_factor.mat()).angle;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<SweepRecord> sweep_point(Axis axis, const GridPoint& pt,
                                     double tol) {
  ModelParams params;
  params.gamma = pt.gamma;
  params.h = pt.h;
  params.omega = pt.omega;
  params.axis = axis;
  const RotatingModel model = rotating_model(params);
  (void)tol;  // reserved for oracle-backed sweeps; engine rows are closed-form

  std::vector<SweepRecord> rows;
  if (axis == Axis::z) {
    for (const ZStateAnalysis& a : analyze_z_point(model)) {
      SweepRecord rec;
      rec.gamma = pt.gamma;
      rec.h = pt.h;
      rec.omega = pt.omega;
      rec.state_label = a.index == 1 ? "1" : "2";
      rec.b_value = a.engine_found ? a.group->b_value : a.p_closed;
      rec.theta = a.engine_found ? a.group->theta : kNaN;
      rec.total = a.engine_found ? a.engine.total : kNaN;
      rec.dynamical = a.engine_found ? a.engine.dynamical : kNaN;
      rec.geometric_closed = a.closed_valid ? a.geometric_closed : kNaN;
      rec.geometric_numeric = a.engine_found ? a.engine.geometric : kNaN;
      rec.residual = a.closed_valid && a.engine_found
                         ? angle_distance(rec.geometric_closed,
                                          rec.geometric_numeric)
                         : kNaN;
      rows.push_back(std::move(rec));
    }
  } else {
    for (const XGroupAnalysis& a : analyze_x_point(model)) {
      SweepRecord rec;
      rec.gamma = pt.gamma;
      rec.h = pt.h;
      rec.omega = pt.omega;
      rec.state_label = a.group_index == 1 ? "g1" : "g2";
      rec.b_value = a.engine_found ? a.group->b_value : a.b_closed;
      rec.theta = a.engine_found ? a.group->theta : kNaN;
      rec.dynamical = a.dynamical_angle;
      rec.geometric_numeric = a.geometric_numeric;
      rec.geometric_closed = a.geometric_closed;
      rec.total = a.engine_found
                      ? principal_value(a.geometric_numeric + a.dynamical_angle)
                      : kNaN;
      rec.residual = a.engine_found
                         ? angle_distance(rec.geometric_closed,
                                          rec.geometric_numeric)
                         : kNaN;
      rows.push_back(std::move(rec));
    }
  }
  return rows;
}

std::vector<SweepRecord> run_sweep(Axis axis,
                                   const std::vector<GridPoint>& grid,
                                   double tol, bool parallel) {
  const int n = static_cast<int>(grid.size());
  std::vector<std::vector<SweepRecord>> slots(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < n; ++i) slots[i] = sweep_point(axis, grid[i], tol);
  std::vector<SweepRecord> rows;
  rows.reserve(2 * grid.size());
  for (auto& slot : slots)
    for (auto& rec : slot) rows.push_back(std::move(rec));
  return rows;
}

const char* const kSweepCsvHeader =
    "gamma,h,omega,state,b_value,theta,total,dynamical,geometric_closed,"
    "geometric_numeric,residual";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string emit_csv(const std::vector<SweepRecord>& records) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const SweepRecord& r : records) {
    out += format_double(r.gamma) + ',' + format_double(r.h) + ',' +
           format_double(r.omega) + ',' + r.state_label + ',' +
           format_double(r.b_value) + ',' + format_double(r.theta) + ',' +
           format_double(r.total) + ',' + format_double(r.dynamical) + ',' +
           format_double(r.geometric_closed) + ',' +
           format_double(r.geometric_numeric) + ',' +
           format_double(r.residual) + '\n';
  }
  return out;
}

std::string emit_json(const std::vector<SweepRecord>& records) {
  auto field = [](double v) {
    return std::isnan(v) ? std::string("null") : format_double(v);
  };
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    out += "  {\"gamma\":" + field(r.gamma) + ",\"h\":" + field(r.h) +
           ",\"omega\":" + field(r.omega) + ",\"state\":\"" + r.state_label +
           "\",\"b_value\":" + field(r.b_value) +
           ",\"theta\":" + field(r.theta) + ",\"total\":" + field(r.total) +
           ",\"dynamical\":" + field(r.dynamical) +
           ",\"geometric_closed\":" + field(r.geometric_closed) +
           ",\"geometric_numeric\":" + field(r.geometric_numeric) +
           ",\"residual\":" + field(r.residual) + "}";
    if (i + 1 < records.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

std::vector<SweepRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw InvalidInput("parse_csv: missing or unexpected header");
  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) fields.push_back(cell);
    if (fields.size() != 11)
      throw InvalidInput("parse_csv: bad row '" + line + "'");
    SweepRecord r;
    r.gamma = std::stod(fields[0]);
    r.h = std::stod(fields[1]);
    r.omega = std::stod(fields[2]);
    r.state_label = fields[3];
    r.b_value = std::stod(fields[4]);
    r.theta = std::stod(fields[5]);
    r.total = std::stod(fields[6]);
    r.dynamical = std::stod(fields[7]);
    r.geometric_closed = std::stod(fields[8]);
    r.geometric_numeric = std::stod(fields[9]);
    r.residual = std::stod(fields[10]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace phaselab
