// Benchmark of the OpenMP kernels against their serial reference paths:
// column-parallel Schrodinger propagation and grid-parallel sweeps.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "phaselab/propagator.hpp"
#include "phaselab/sweep.hpp"

using namespace phaselab;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  ModelParams p;
  p.gamma = 0.5;
  p.h = 0.3;
  p.omega = 0.1;
  const RotatingModel model = rotating_model(p);

  Matrix u_serial, u_parallel;
  const double t_serial = time_best_of(3, [&] {
    u_serial = evolution_operator_serial(model, model.period, 1e-10).mat();
  });
  const double t_parallel = time_best_of(3, [&] {
    u_parallel = evolution_operator(model, model.period, 1e-10).mat();
  });
  std::printf("propagation U(T), dim 8, tol 1e-10:\n");
  std::printf("  serial   %8.3f ms\n", 1e3 * t_serial);
  std::printf("  parallel %8.3f ms  (speedup %.2fx, bitwise equal: %s)\n",
              1e3 * t_parallel, t_serial / t_parallel,
              max_abs(u_serial - u_parallel) == 0.0 ? "yes" : "NO");

  const std::vector<GridPoint> grid = default_grid();
  std::string csv_serial, csv_parallel;
  const double s_serial = time_best_of(3, [&] {
    csv_serial = emit_csv(run_sweep(Axis::z, grid, 1e-10, false));
  });
  const double s_parallel = time_best_of(3, [&] {
    csv_parallel = emit_csv(run_sweep(Axis::z, grid, 1e-10, true));
  });
  std::printf("z-model sweep over %zu grid points:\n", grid.size());
  std::printf("  serial   %8.3f ms\n", 1e3 * s_serial);
  std::printf("  parallel %8.3f ms  (speedup %.2fx, byte-identical: %s)\n",
              1e3 * s_parallel, s_serial / s_parallel,
              csv_serial == csv_parallel ? "yes" : "NO");
  return 0;
}
