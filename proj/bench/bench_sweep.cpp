// Serial-vs-OpenMP timing for the certification sweep kernel. The two paths
// must produce identical records; the benchmark reports the speedup.

#include <cstdio>
#include <cstring>

#include "sdcurv/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace sdcurv;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now();
    fn();
    best = std::min(best, now() - t0);
  }
  return best;
}

bool identical(const std::vector<PointRecord>& a, const std::vector<PointRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(a[i].rep.eigs.data(), b[i].rep.eigs.data(), sizeof(double) * 4) != 0)
      return false;
    if (a[i].rep.s != b[i].rep.s) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int grid = 16;  // 2 centers x 16 shells x 512 directions = 16384 points
  if (argc > 1) grid = std::atoi(argv[1]);

  const Configuration cfg = collinear_config({1.0}, GaugeKind::mean_distance());
  const SweepRegion region{4.0, 0.02, grid};
  const std::vector<HPoint> pts = sample_grid(cfg, region, 7);
  std::printf("sweep kernel over %zu points (grid=%d)\n", pts.size(), grid);

  std::vector<PointRecord> serial_rows, parallel_rows;
  const double t_serial =
      time_best_of(3, [&] { serial_rows = evaluate_points_serial(cfg, pts); });
  const double t_parallel =
      time_best_of(3, [&] { parallel_rows = evaluate_points_parallel(cfg, pts, 0); });

  if (!identical(serial_rows, parallel_rows)) {
    std::printf("ERROR: parallel sweep does not match the serial reference\n");
    return 1;
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("  serial   : %8.3f ms  (%.2f us/point)\n", 1e3 * t_serial,
              1e6 * t_serial / pts.size());
  std::printf("  openmp   : %8.3f ms  (%d threads)\n", 1e3 * t_parallel, threads);
  std::printf("  speedup  : %8.2fx   (records identical)\n", t_serial / t_parallel);

  const double t_cluster_serial = time_best_of(2, [&] {
    cluster_certificate(collinear_config({0.1, 0.1}, GaugeKind::mean_distance()), 0.05,
                        20000, 3, 1);
  });
  const double t_cluster_par = time_best_of(2, [&] {
    cluster_certificate(collinear_config({0.1, 0.1}, GaugeKind::mean_distance()), 0.05,
                        20000, 3, 0);
  });
  std::printf("cluster certificate, 60000 samples\n");
  std::printf("  serial   : %8.3f ms\n", 1e3 * t_cluster_serial);
  std::printf("  openmp   : %8.3f ms  -> %.2fx\n", 1e3 * t_cluster_par,
              t_cluster_serial / t_cluster_par);
  return 0;
}
