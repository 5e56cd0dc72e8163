#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdcurv/curvature.hpp"
#include "sdcurv/json_io.hpp"

// Certification sweeps. The pointwise kernel is pure; the parallel driver is
// an OpenMP loop over a preassigned result array and must agree with the
// serial reference bit for bit (reductions run serially over the stored
// rows, in grid order).

namespace sdcurv {

enum class Check { positivity, strong, ric_operator, mu_bound, cluster, oracle, orbifold };

Check check_from_name(const std::string& name);
std::string check_name(Check c);

enum class OutputFormat { json, csv };

struct SweepRegion {
  double rmax = 5.0;   // radius cap around each center
  double eps = 0.05;   // exclusion radius around each center
  int grid = 12;       // radial shells per center; 2*grid^2 directions each
};

struct SweepSpec {
  Configuration config;
  SweepRegion region;
  std::vector<Check> checks;
  uint64_t seed = 0;
  std::string out_path;  // empty: don't write
  OutputFormat format = OutputFormat::json;
  int threads = 0;       // 0 = library default, 1 = serial reference
  int oracle_samples = 25;
  double oracle_step = 1e-3;
};

// Geodesic-adapted grid: log-spaced radii in [eps, rmax] around each center
// (around the base point when n = 0), jittered directions from `seed`.
// Curvature varies on the log-r scale, so uniform chart grids undersample
// near the centers.
std::vector<HPoint> sample_grid(const Configuration& cfg, const SweepRegion& region,
                                uint64_t seed);

struct PointRecord {
  HPoint p;
  CurvatureReport rep;
};

std::vector<PointRecord> evaluate_points_serial(const Configuration& cfg,
                                                const std::vector<HPoint>& pts);
std::vector<PointRecord> evaluate_points_parallel(const Configuration& cfg,
                                                  const std::vector<HPoint>& pts,
                                                  int threads = 0);
std::vector<PointRecord> evaluate_points(const Configuration& cfg,
                                         const std::vector<HPoint>& pts, int threads = 0);

struct CertifyOutcome {
  int exit_code = 0;  // 0 pass, 1 failed certification, 2 spec error
  Json report;
  std::string rendered;  // what was (or would be) written to out_path
};

// Exit 0 iff every sampled point passes every requested check; the report
// carries per-check minima and the arg-min point. Spec errors throw
// (the CLI maps them to exit 2, writing no report).
CertifyOutcome run_certify(const SweepSpec& spec);

struct OracleSpec {
  Configuration config;
  int samples = 25;
  double step = 1e-3;
  uint64_t seed = 0;
  bool flat_sanity = false;  // check the flat chart instead of the config
  std::string out_path;
  int threads = 0;
};

// Max relative Ricci discrepancy (closed form vs finite differences) and max
// self-duality residual over the sample set.
CertifyOutcome run_oracle(const OracleSpec& spec);

// Writes `rendered` to out_path (no-op when empty).
void write_outcome(const CertifyOutcome& outcome, const std::string& out_path);

}  // namespace sdcurv
