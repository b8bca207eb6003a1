#include "phaselab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "phaselab/adiabatic.hpp"
#include "phaselab/verify.hpp"

namespace phaselab {

namespace {

constexpr char kAngleNote[] =
    "# angles are principal values in (-pi, pi]; the LMG Hamiltonian omits "
    "the constant -(1+gamma)/4";

// Angle cell for tables; normalizes the "-0.000000" rendering.
std::string fmt_angle(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

struct PointArgs {
  std::string model = "z";
  double gamma = 0.0;
  double h = 0.0;
  double omega = 0.5;
  std::string format = "table";
  double tol = 1e-10;
  int state = 0;  // 0 = all
  int group = 0;  // 0 = all
  std::string grid = "default";
};

Axis parse_axis(const std::string& name) {
  if (name == "z") return Axis::z;
  if (name == "x") return Axis::x;
  throw InvalidInput("unknown model '" + name + "'");
}

RotatingModel build_model(const PointArgs& a) {
  ModelParams p;
  p.gamma = a.gamma;
  p.h = a.h;
  p.omega = a.omega;
  p.axis = parse_axis(a.model);
  return rotating_model(p);
}

std::vector<GridPoint> resolve_grid(const std::string& name) {
  if (name == "default") return default_grid();
  if (name.rfind("file=", 0) == 0) return load_grid(name.substr(5));
  throw InvalidInput("--grid expects 'default' or 'file=PATH'");
}

// A small column-oriented emitter for the non-sweep subcommands. Cells are
// pre-formatted strings; csv/json reuse them verbatim.
struct MiniTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void print(const std::string& format, std::ostream& out) const {
    if (format == "csv") {
      for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
      for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
          out << row[c] << (c + 1 < row.size() ? "," : "\n");
      return;
    }
    if (format == "json") {
      out << "[\n";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << "  {";
        for (std::size_t c = 0; c < columns.size(); ++c) {
          const std::string& cell = rows[r][c];
          const bool numeric =
              !cell.empty() &&
              cell.find_first_not_of("+-.0123456789einfa") == std::string::npos;
          out << '"' << columns[c] << "\":";
          if (numeric && cell != "nan" && cell != "inf")
            out << cell;
          else if (cell == "nan" || cell == "inf")
            out << "null";
          else
            out << '"' << cell << '"';
          if (c + 1 < columns.size()) out << ',';
        }
        out << (r + 1 < rows.size() ? "},\n" : "}\n");
      }
      out << "]\n";
      return;
    }
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      width[c] = columns[c].size();
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << columns[c]
          << std::string(width[c] - columns[c].size() + 2, ' ');
    }
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << row[c] << std::string(width[c] - row[c].size() + 2, ' ');
      out << '\n';
    }
  }
};

void print_factor(const Matrix& u, std::ostream& out) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    out << "  (";
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %+.6f%+.6fi", u(i, j).real(),
                    u(i, j).imag());
      out << buf;
    }
    out << " )\n";
  }
}

int cmd_spectrum(const PointArgs& a, std::ostream& out) {
  const RotatingModel model = build_model(a);
  const EigenSystem sys = hermitian_eig(frame_generator(model));

  std::vector<double> closed;
  if (parse_axis(a.model) == Axis::z) {
    const ZModelSpectrum s1 = z_spectrum_closed(a.gamma, a.h, a.omega);
    const ZModelSpectrum s2 = z_spectrum_closed(a.gamma, -a.h, -a.omega);
    closed = {s1.p1, s1.p2, s1.p34, s1.p34, s2.p1, s2.p2, s2.p34, s2.p34};
    std::sort(closed.begin(), closed.end());
  } else {
    const auto [b1, b2] = x_spectrum_closed(a.gamma, a.h, a.omega);
    closed.assign(8, std::numeric_limits<double>::quiet_NaN());
    // Pair the two closed doublets with the nearest numeric eigenvalues.
    for (const double b : {b1, b2})
      for (int k = 0; k < 8; ++k)
        if (std::abs(sys.values(k) - b) < 1e-8 * (1.0 + std::abs(b)))
          closed[k] = b;
  }

  MiniTable table;
  table.columns = {"index", "closed", "numeric", "abs_diff"};
  for (int k = 0; k < 8; ++k) {
    const double diff = std::abs(closed[k] - sys.values(k));
    table.rows.push_back({std::to_string(k + 1), format_double(closed[k]),
                          format_double(sys.values(k)), format_double(diff)});
  }
  if (a.format == "table") {
    out << kAngleNote << '\n'
        << "# " << a.model << "-model spectrum of B at gamma=" << a.gamma
        << " h=" << a.h << " omega=" << a.omega << '\n';
  }
  table.print(a.format, out);
  return 0;
}

int cmd_aa(const PointArgs& a, std::ostream& out) {
  if (parse_axis(a.model) != Axis::z)
    throw InvalidInput(
        "aa: closed-form A-A phases are defined for the z model; use "
        "'holonomy' for the x model");
  std::vector<SweepRecord> rows =
      sweep_point(Axis::z, {a.gamma, a.h, a.omega}, a.tol);
  if (a.state != 0) {
    std::vector<SweepRecord> filtered;
    for (auto& r : rows)
      if (r.state_label == std::to_string(a.state))
        filtered.push_back(std::move(r));
    rows = std::move(filtered);
  }
  if (a.format == "csv") {
    out << emit_csv(rows);
    return 0;
  }
  if (a.format == "json") {
    out << emit_json(rows);
    return 0;
  }
  out << kAngleNote << '\n';
  MiniTable table;
  table.columns = {"state",     "b_value",          "theta",
                   "total",     "dynamical",        "geometric",
                   "geometric_closed", "residual"};
  for (const SweepRecord& r : rows)
    table.rows.push_back({r.state_label, format_double(r.b_value),
                          fmt_angle(r.theta), fmt_angle(r.total),
                          fmt_angle(r.dynamical),
                          fmt_angle(r.geometric_numeric),
                          fmt_angle(r.geometric_closed),
                          format_double(r.residual)});
  table.print(a.format, out);
  return 0;
}

int cmd_berry(const PointArgs& a, std::ostream& out) {
  if (parse_axis(a.model) != Axis::z)
    throw InvalidInput("berry: the adiabatic analysis covers the z model");
  const RotatingModel model = build_model(a);
  const std::vector<BerryLevel> levels = berry_levels(model);

  MiniTable table;
  table.columns = {"state",        "lambda_closed", "lambda_numeric",
                   "phase_closed", "phase_numeric", "residual"};
  const BerrySpectrum bs = berry_spectrum_closed(a.gamma, a.h);
  for (int index = 1; index <= 2; ++index) {
    if (a.state != 0 && a.state != index) continue;
    const double lambda = index == 1 ? bs.lambda1 : bs.lambda2;
    std::string closed_cell = "nan", numeric_cell = "nan", res_cell = "nan";
    std::string lambda_num = "nan";
    double closed = std::numeric_limits<double>::quiet_NaN();
    try {
      closed = berry_phase_closed(a.gamma, a.h, index);
      closed_cell = fmt_angle(closed);
    } catch (const DegenerateFormula&) {
    }
    Eigen::VectorXd closed_vec;
    try {
      closed_vec = berry_vector_closed(a.gamma, a.h, index);
      closed_vec.normalize();
    } catch (const InvalidInput&) {
    }
    const BerryLevel* matched = nullptr;
    double best = 0.5;
    if (closed_vec.size() == 4 && closed_vec.norm() > 0.5) {
      const StateVector target = closed_vec.cast<Complex>();
      for (const BerryLevel& level : levels) {
        if (level.dimension != 1) continue;
        const double score =
            std::abs(Complex(target.dot(level.states_prime.col(0))));
        if (score > best) {
          best = score;
          matched = &level;
        }
      }
    }
    if (matched) {
      const double numeric = berry_phase(model, *matched);
      numeric_cell = fmt_angle(numeric);
      lambda_num = format_double(matched->value);
      if (!std::isnan(closed))
        res_cell = format_double(angle_distance(closed, numeric));
    }
    table.rows.push_back({std::to_string(index), format_double(lambda),
                          lambda_num, closed_cell, numeric_cell, res_cell});
  }
  if (a.format == "table") out << kAngleNote << '\n';
  table.print(a.format, out);
  return 0;
}

int cmd_holonomy(const PointArgs& a, std::ostream& out) {
  const Axis axis = parse_axis(a.model);
  const RotatingModel model = build_model(a);
  MiniTable table;
  table.columns = {"group",         "b_value",        "theta",
                   "angle_closed",  "angle_numeric",  "scalar_residual",
                   "dynamical_angle"};

  std::vector<std::pair<std::string, Holonomy>> factors;
  if (axis == Axis::x) {
    for (const XGroupAnalysis& g : analyze_x_point(model)) {
      if (a.group != 0 && a.group != g.group_index) continue;
      if (!g.engine_found)
        throw Error("holonomy: x-model degenerate group not found");
      table.rows.push_back(
          {"g" + std::to_string(g.group_index), format_double(g.group->b_value),
           fmt_angle(g.group->theta), fmt_angle(g.geometric_closed),
           fmt_angle(g.geometric_numeric), format_double(g.scalar_residual),
           fmt_angle(g.dynamical_angle)});
      factors.emplace_back("group " + std::to_string(g.group_index),
                           aa_holonomy(model, *g.group));
    }
  } else {
    // z model: the p3 = p4 doublet of each parity block; no closed-form angle
    // exists for it, the claim is that the factor is scalar.
    const std::vector<CyclicGroup> groups = cyclic_states(model);
    for (int block = 1; block <= 2; ++block) {
      if (a.group != 0 && a.group != block) continue;
      const double sign = block == 1 ? 1.0 : -1.0;
      const ZModelSpectrum zs =
          z_spectrum_closed(a.gamma, sign * a.h, sign * a.omega);
      const CyclicGroup* matched = nullptr;
      for (const CyclicGroup& g : groups)
        if (g.dimension == 2 &&
            std::abs(g.b_value - zs.p34) < 1e-6 * (1.0 + std::abs(zs.p34)))
          matched = &g;
      if (!matched) throw Error("holonomy: z-model p34 group not found");
      const Holonomy hol = aa_holonomy(model, *matched);
      const ScalarPart geo = scalar_part(hol.geometric_factor.mat());
      const ScalarPart dyn = scalar_part(hol.dynamical_factor.mat());
      table.rows.push_back({"p34-block" + std::to_string(block),
                            format_double(matched->b_value),
                            fmt_angle(matched->theta), "nan",
                            fmt_angle(geo.angle), format_double(geo.residual),
                            fmt_angle(dyn.angle)});
      factors.emplace_back("p34 block " + std::to_string(block), hol);
    }
  }
  if (a.format == "table") out << kAngleNote << '\n';
  table.print(a.format, out);
  if (a.format == "table") {
    for (const auto& [label, hol] : factors) {
      out << "geometric factor, " << label << ":\n";
      print_factor(hol.geometric_factor.mat(), out);
      out << "dynamical factor, " << label << ":\n";
      print_factor(hol.dynamical_factor.mat(), out);
    }
  }
  return 0;
}

int cmd_sweep(const PointArgs& a, std::ostream& out) {
  const std::vector<GridPoint> grid = resolve_grid(a.grid);
  const std::vector<SweepRecord> rows =
      run_sweep(parse_axis(a.model), grid, a.tol, true);
  if (a.format == "csv") {
    out << emit_csv(rows);
  } else if (a.format == "json") {
    out << emit_json(rows);
  } else {
    out << kAngleNote << '\n';
    MiniTable table;
    table.columns = {"gamma",     "h",     "omega",
                     "state",     "b_value", "theta",
                     "total",     "dynamical", "geometric_closed",
                     "geometric_numeric", "residual"};
    for (const SweepRecord& r : rows)
      table.rows.push_back(
          {format_double(r.gamma), format_double(r.h), format_double(r.omega),
           r.state_label, format_double(r.b_value), fmt_angle(r.theta),
           fmt_angle(r.total), fmt_angle(r.dynamical),
           fmt_angle(r.geometric_closed), fmt_angle(r.geometric_numeric),
           format_double(r.residual)});
    table.print(a.format, out);
  }
  return 0;
}

int cmd_verify(const PointArgs& a, std::ostream& out) {
  VerifyOptions options;
  options.grid = resolve_grid(a.grid);
  options.tol = a.tol;
  const std::vector<CriterionResult> results = run_acceptance(options);
  out << format_report(results);
  return all_pass(results) ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  double default_tol = 1e-10;
  if (const char* env = std::getenv("PHASELAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0)
      default_tol = v;
    else
      err << "PHASELAB_TOL ignored (unparsable value '" << env << "')\n";
  }

  CLI::App app{"geometric phases of rotating-frame LMG models"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  PointArgs a;
  a.tol = default_tol;

  auto add_point_flags = [&a](CLI::App* cmd, bool needs_omega) {
    cmd->add_option("--model", a.model, "model family, z or x")
        ->check(CLI::IsMember({"z", "x"}));
    cmd->add_option("--gamma", a.gamma, "anisotropy gamma")->required();
    cmd->add_option("--h", a.h, "field strength h")->required();
    auto* om = cmd->add_option("--omega", a.omega, "drive angular velocity");
    if (needs_omega) om->required();
    cmd->add_option("--tol", a.tol, "numeric tolerance");
    cmd->add_option("--format", a.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "closed vs numeric spectra");
  add_point_flags(spectrum, true);

  CLI::App* aa = app.add_subcommand("aa", "non-degenerate A-A phases");
  add_point_flags(aa, true);
  aa->add_option("--state", a.state, "restrict to state 1 or 2")
      ->check(CLI::Range(1, 2));

  CLI::App* berry = app.add_subcommand("berry", "Berry phases of the H~ block");
  add_point_flags(berry, false);
  berry->add_option("--state", a.state, "restrict to state 1 or 2")
      ->check(CLI::Range(1, 2));

  CLI::App* holonomy =
      app.add_subcommand("holonomy", "degenerate holonomy factors");
  add_point_flags(holonomy, true);
  holonomy->add_option("--group", a.group, "restrict to group 1 or 2")
      ->check(CLI::Range(1, 2));

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to csv/json");
  sweep->add_option("--model", a.model, "model family, z or x")
      ->check(CLI::IsMember({"z", "x"}));
  sweep->add_option("--grid", a.grid, "default or file=PATH");
  sweep->add_option("--tol", a.tol, "numeric tolerance");
  sweep->add_option("--format", a.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  CLI::App* verify =
      app.add_subcommand("verify", "run the full verification report");
  verify->add_option("--grid", a.grid, "default or file=PATH");
  verify->add_option("--tol", a.tol, "oracle tolerance");

  std::vector<std::string> argv_vec = args;
  argv_vec.insert(argv_vec.begin(), "phaselab");
  std::vector<const char*> argv;
  argv.reserve(argv_vec.size());
  for (const std::string& s : argv_vec) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(a, out);
    if (aa->parsed()) return cmd_aa(a, out);
    if (berry->parsed()) return cmd_berry(a, out);
    if (holonomy->parsed()) return cmd_holonomy(a, out);
    if (sweep->parsed()) return cmd_sweep(a, out);
    if (verify->parsed()) return cmd_verify(a, out);
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 1;
}

}  // namespace phaselab
