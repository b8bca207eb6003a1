#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "phaselab/cli.hpp"
#include "phaselab/sweep.hpp"

using namespace phaselab;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << body;
  return path;
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("default grid shape and order") {
  const std::vector<GridPoint> grid = default_grid();
  REQUIRE(grid.size() == 36);
  CHECK(grid[0].gamma == 0.0);
  CHECK(grid[0].omega == 0.1);
  CHECK(grid[1].omega == 0.5);  // omega fastest
  CHECK(grid.back().gamma == 2.0);
  CHECK(grid.back().omega == 1.0);
}

TEST_CASE("grid files") {
  const std::string path = write_temp(
      "phaselab_grid.csv", "# omega ladder\n0.5,0.3,0.1\n0.5,0.3,0.2\n");
  const std::vector<GridPoint> grid = load_grid(path);
  REQUIRE(grid.size() == 2);
  CHECK(grid[1].omega == 0.2);

  const std::string bad = write_temp("phaselab_bad.csv", "0.5 0.3\n");
  CHECK_THROWS_AS(load_grid(bad), InvalidInput);
  CHECK_THROWS_AS(load_grid("/nonexistent/grid.csv"), InvalidInput);
}

TEST_CASE("sweep rows carry matching closed and numeric phases") {
  const std::vector<SweepRecord> rows =
      sweep_point(Axis::z, {0.5, 0.3, 0.2}, 1e-10);
  REQUIRE(rows.size() == 2);
  for (const SweepRecord& r : rows) {
    CHECK(r.residual <= 1e-9);
    CHECK(r.theta == doctest::Approx(kPi));
    CHECK(angle_distance(r.geometric_closed, r.geometric_numeric) ==
          doctest::Approx(r.residual));
  }

  const std::vector<SweepRecord> xrows =
      sweep_point(Axis::x, {0.5, 0.3, 0.2}, 1e-10);
  REQUIRE(xrows.size() == 2);
  CHECK(xrows[0].state_label == "g1");
  CHECK(xrows[1].state_label == "g2");
  for (const SweepRecord& r : xrows) CHECK(r.residual <= 1e-9);
}

TEST_CASE("flagged rows are NaN rather than fabricated") {
  // gamma=1, 3(h+omega)<1: the closed index-1 eigenvector degenerates.
  const std::vector<SweepRecord> rows =
      sweep_point(Axis::z, {1.0, 0.0, 0.1}, 1e-10);
  REQUIRE(rows.size() == 2);
  CHECK(std::isnan(rows[0].geometric_closed));
  CHECK(!std::isnan(rows[0].geometric_numeric));
  CHECK(!std::isnan(rows[1].geometric_closed));
  CHECK(angle_distance(rows[1].geometric_closed, 0.0) <= 1e-9);
}

TEST_CASE("parallel sweep equals the serial reference byte for byte") {
  const std::vector<GridPoint> grid = {
      {0.0, 0.3, 0.1}, {0.5, 0.3, 0.5}, {1.0, 0.5, 0.3},
      {2.0, 1.0, 1.0}, {0.5, 0.0, 0.7},
  };
  for (const Axis axis : {Axis::z, Axis::x}) {
    const std::string serial = emit_csv(run_sweep(axis, grid, 1e-10, false));
    const std::string parallel = emit_csv(run_sweep(axis, grid, 1e-10, true));
    CHECK(serial == parallel);
  }
}

TEST_CASE("csv format fidelity") {
  CHECK(emit_csv({}) == std::string(kSweepCsvHeader) + "\n");

  const std::vector<SweepRecord> rows =
      sweep_point(Axis::z, {0.5, 0.3, 0.2}, 1e-10);
  const std::string text = emit_csv(rows);
  CHECK(text.back() == '\n');

  const std::vector<SweepRecord> parsed = parse_csv(text);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRecord& a = rows[i];
    const SweepRecord& b = parsed[i];
    CHECK(b.state_label == a.state_label);
    for (const auto& [x, y] :
         {std::pair{a.gamma, b.gamma},
          {a.b_value, b.b_value},
          {a.theta, b.theta},
          {a.total, b.total},
          {a.dynamical, b.dynamical},
          {a.geometric_closed, b.geometric_closed},
          {a.geometric_numeric, b.geometric_numeric},
          {a.residual, b.residual}}) {
      CHECK(std::abs(x - y) <= 1e-11 * std::max(1.0, std::abs(x)));
    }
  }
  CHECK_THROWS_AS(parse_csv("bogus\n"), InvalidInput);
}

TEST_CASE("a five-omega sweep emits five ascending rows per state") {
  const std::string path = write_temp(
      "phaselab_omegas.csv",
      "0.5,0.3,0.1\n0.5,0.3,0.2\n0.5,0.3,0.3\n0.5,0.3,0.4\n0.5,0.3,0.5\n");
  const std::vector<SweepRecord> rows =
      run_sweep(Axis::z, load_grid(path), 1e-10, true);
  REQUIRE(rows.size() == 10);
  double previous = 0.0;
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].omega > previous);
    previous = rows[i].omega;
  }
}

TEST_CASE("json emission") {
  const std::vector<SweepRecord> rows =
      sweep_point(Axis::z, {1.0, 0.0, 0.1}, 1e-10);
  const std::string text = emit_json(rows);
  CHECK(text.find("\"state\":\"1\"") != std::string::npos);
  CHECK(text.find("\"geometric_closed\":null") != std::string::npos);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(emit_json(rows) == text);
}

TEST_CASE("cli aa prints a zero geometric phase for the decoupled state") {
  std::string out;
  const int code = run({"aa", "--model", "z", "--gamma", "1", "--h", "0.5",
                        "--omega", "0.3"},
                       &out);
  CHECK(code == 0);
  CHECK(out.find("0.000000") != std::string::npos);
  CHECK(out.find("principal values") != std::string::npos);
}

TEST_CASE("cli holonomy prints the printed scalar angle") {
  std::string out;
  const int code =
      run({"holonomy", "--model", "x", "--gamma", "0.5", "--h", "0.5",
           "--omega", "0.5", "--group", "1"},
          &out);
  CHECK(code == 0);
  CHECK(out.find("-0.920151") != std::string::npos);
  CHECK(out.find("geometric factor") != std::string::npos);
}

TEST_CASE("cli berry pins the gamma=0 h=0 phase") {
  std::string out;
  const int code =
      run({"berry", "--model", "z", "--gamma", "0", "--h", "0", "--state",
           "1"},
          &out);
  CHECK(code == 0);
  CHECK(out.find("3.141593") != std::string::npos);
}

TEST_CASE("cli spectrum and sweep run clean") {
  std::string out;
  CHECK(run({"spectrum", "--model", "x", "--gamma", "1", "--h", "0",
             "--omega", "1", "--format", "csv"},
            &out) == 0);
  CHECK(out.find("index,closed,numeric,abs_diff") == 0);

  const std::string path =
      write_temp("phaselab_sweep_grid.csv", "0.5,0.3,0.1\n0.5,0.3,0.2\n");
  std::string csv1, csv2;
  CHECK(run({"sweep", "--model", "z", "--grid", "file=" + path, "--format",
             "csv"},
            &csv1) == 0);
  CHECK(run({"sweep", "--model", "z", "--grid", "file=" + path, "--format",
             "csv"},
            &csv2) == 0);
  CHECK(csv1 == csv2);  // byte-identical reruns
  CHECK(csv1.find(kSweepCsvHeader) == 0);
}

TEST_CASE("cli usage errors exit with code 1") {
  std::string out, err;
  CHECK(run({"bogus"}, &out, &err) == 1);
  CHECK(run({"aa", "--model", "q", "--gamma", "1", "--h", "0", "--omega",
             "1"},
            &out, &err) == 1);
  CHECK(run({"aa", "--gamma", "1"}, &out, &err) == 1);
  CHECK(run({}, &out, &err) == 1);
  CHECK(run({"sweep", "--grid", "nowhere"}, &out, &err) == 1);
}

TEST_CASE("cli aa rejects the x model as usage") {
  std::string out, err;
  CHECK(run({"aa", "--model", "x", "--gamma", "0.5", "--h", "0.3", "--omega",
             "0.5"},
            &out, &err) == 1);
  CHECK(err.find("holonomy") != std::string::npos);
}

TEST_CASE("cli verify exits with code 2 when criteria fail") {
  // An unusable oracle tolerance makes the propagation-backed criteria fail
  // inside the report instead of escaping as an exception.
  const std::string path =
      write_temp("phaselab_verify_grid.csv", "0.5,0.3,0.5\n");
  std::string out, err;
  const int code =
      run({"verify", "--grid", "file=" + path, "--tol", "-1"}, &out, &err);
  CHECK(code == 2);
  CHECK(out.find("FAIL") != std::string::npos);
  CHECK(out.find("PASS") != std::string::npos);  // engine-only criteria
}

TEST_CASE("PHASELAB_TOL environment variable") {
  setenv("PHASELAB_TOL", "1e-8", 1);
  std::string out, err;
  CHECK(run({"aa", "--model", "z", "--gamma", "0.5", "--h", "0.3", "--omega",
             "0.5"},
            &out, &err) == 0);
  setenv("PHASELAB_TOL", "junk", 1);
  CHECK(run({"aa", "--model", "z", "--gamma", "0.5", "--h", "0.3", "--omega",
             "0.5"},
            &out, &err) == 0);
  CHECK(err.find("PHASELAB_TOL ignored") != std::string::npos);
  unsetenv("PHASELAB_TOL");
}
