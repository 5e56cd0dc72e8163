#include "sdcurv/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sdcurv/asymptotics_n3.hpp"
#include "sdcurv/oracle.hpp"
#include "sdcurv/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdcurv {

namespace {

constexpr double kMuTol = 1e-9;  // margin for the strict closed-form inequalities

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

}  // namespace

Check check_from_name(const std::string& name) {
  if (name == "positivity") return Check::positivity;
  if (name == "strong") return Check::strong;
  if (name == "ric-operator") return Check::ric_operator;
  if (name == "mu-bound") return Check::mu_bound;
  if (name == "cluster") return Check::cluster;
  if (name == "oracle") return Check::oracle;
  if (name == "orbifold") return Check::orbifold;
  throw std::invalid_argument("unknown check '" + name + "'");
}

std::string check_name(Check c) {
  switch (c) {
    case Check::positivity: return "positivity";
    case Check::strong: return "strong";
    case Check::ric_operator: return "ric-operator";
    case Check::mu_bound: return "mu-bound";
    case Check::cluster: return "cluster";
    case Check::oracle: return "oracle";
    case Check::orbifold: return "orbifold";
  }
  return "?";
}

std::vector<HPoint> sample_grid(const Configuration& cfg, const SweepRegion& region,
                                uint64_t seed) {
  if (region.grid < 2) throw std::invalid_argument("sample_grid: grid counts must be >= 2");
  if (!(region.eps > 0.0) || !(region.eps < region.rmax))
    throw std::invalid_argument("sample_grid: needs 0 < eps < rmax");

  std::vector<HPoint> anchors = cfg.centers();
  if (anchors.empty()) anchors.push_back({0.0, 0.0, 1.0});

  const int shells = region.grid;
  const int dirs = 2 * region.grid * region.grid;
  std::vector<HPoint> pts;
  pts.reserve(anchors.size() * shells * dirs);

  uint64_t index = 0;
  for (const HPoint& anchor : anchors) {
    for (int is = 0; is < shells; ++is) {
      const double t = shells == 1 ? 0.0 : double(is) / (shells - 1);
      const double r = region.eps * std::exp(t * std::log(region.rmax / region.eps));
      for (int id = 0; id < dirs; ++id, ++index) {
        Rng rng = Rng::for_index(seed, index);
        const double mu = rng.uniform(-1.0, 1.0);
        const double ph = rng.uniform(0.0, 2.0 * M_PI);
        const HPoint p = hyperbolic_sphere_point(anchor, r, mu, ph);
        bool keep = true;
        for (const HPoint& c : cfg.centers())
          if (dist(p, c) < region.eps * (1.0 - 1e-12)) {
            keep = false;
            break;
          }
        if (keep) pts.push_back(p);
      }
    }
  }
  return pts;
}

std::vector<PointRecord> evaluate_points_serial(const Configuration& cfg,
                                                const std::vector<HPoint>& pts) {
  std::vector<PointRecord> out(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i], evaluate_report(cfg, pts[i])};
  return out;
}

std::vector<PointRecord> evaluate_points_parallel(const Configuration& cfg,
                                                  const std::vector<HPoint>& pts, int threads) {
  std::vector<PointRecord> out(pts.size());
  const int64_t n = static_cast<int64_t>(pts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
#endif
  for (int64_t i = 0; i < n; ++i) out[i] = {pts[i], evaluate_report(cfg, pts[i])};
  return out;
}

std::vector<PointRecord> evaluate_points(const Configuration& cfg,
                                         const std::vector<HPoint>& pts, int threads) {
  if (threads == 1) return evaluate_points_serial(cfg, pts);
  return evaluate_points_parallel(cfg, pts, threads);
}

namespace {

struct OracleSweepResult {
  double max_rel_ricci = 0.0;
  double max_residual = 0.0;
  int samples = 0;
};

OracleSweepResult oracle_sweep(const Configuration& cfg, int samples, double step,
                               uint64_t seed, int threads) {
  const ChartMetric chart = fiber_chart(cfg);
  std::vector<HPoint> anchors = cfg.centers();
  if (anchors.empty()) anchors.push_back({0.0, 0.0, 1.0});

  std::vector<Vec4> pts(samples);
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::for_index(seed, 0x0a11ce + i);
    Vec4 q{0.0, 0.0, -1.0, 0.0};
    for (int tries = 0; tries < 256; ++tries) {
      const HPoint& anchor = anchors[i % anchors.size()];
      const double r = rng.uniform(0.35, 1.2);
      const double mu = rng.uniform(-0.9, 0.9);
      const double ph = rng.uniform(0.0, 2.0 * M_PI);
      const HPoint p = hyperbolic_sphere_point(anchor, r, mu, ph);
      q = {p.x, p.y, p.z, 0.0};
      const double dx = p.x - anchor.x, dy = p.y - anchor.y;
      bool clear = std::sqrt(dx * dx + dy * dy) > 0.12 * p.z && chart.in_domain(q);
      for (const HPoint& c : cfg.centers())
        if (dist(p, c) < 0.25) clear = false;
      if (clear) break;
    }
    if (!chart.in_domain(q))
      throw std::invalid_argument("oracle: could not find interior sample points");
    pts[i] = q;
  }

  std::vector<double> rel(samples), resid(samples);
  const int nthreads = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
  for (int i = 0; i < samples; ++i) {
    const FDCurvature fd = fd_curvature(chart, pts[i], step);
    const Mat4 closed = ricci_chart_components(cfg, pts[i]);
    rel[i] = (fd.ricci - closed).max_abs() / (closed.max_abs() + 1e-300);
    resid[i] = fd.weyl_minus / (fd.weyl_plus + fd.weyl_minus + 1e-300);
  }

  OracleSweepResult out;
  out.samples = samples;
  for (int i = 0; i < samples; ++i) {
    out.max_rel_ricci = std::max(out.max_rel_ricci, rel[i]);
    out.max_residual = std::max(out.max_residual, resid[i]);
  }
  return out;
}

std::string render_csv(const std::vector<PointRecord>& rows) {
  std::string out = "x,y,z,s,eig1,eig2,eig3,eig4,positive_ricci,strongly_positive,ric_operator_nonneg\n";
  char buf[512];
  for (const PointRecord& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d\n",
                  r.p.x, r.p.y, r.p.z, r.rep.s, r.rep.eigs[0], r.rep.eigs[1], r.rep.eigs[2],
                  r.rep.eigs[3], r.rep.flags.positive_ricci ? 1 : 0,
                  r.rep.flags.strongly_positive ? 1 : 0,
                  r.rep.flags.ric_operator_nonneg ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace

CertifyOutcome run_certify(const SweepSpec& spec) {
  // Validate the whole spec before any evaluation; spec errors must not
  // leave partial reports behind.
  if (spec.region.grid < 2) throw std::invalid_argument("certify: grid counts must be >= 2");
  if (!(spec.region.eps > 0.0) || !(spec.region.eps < spec.region.rmax))
    throw std::invalid_argument("certify: needs 0 < eps < rmax");
  for (Check c : spec.checks) {
    if (c == Check::cluster && spec.config.n() != 3)
      throw std::invalid_argument("certify: cluster check needs exactly 3 centers");
    if (c == Check::oracle && !spec.config.axisymmetric())
      throw std::invalid_argument("certify: oracle check needs an axisymmetric configuration");
  }

  const bool pointwise =
      std::any_of(spec.checks.begin(), spec.checks.end(), [](Check c) {
        return c == Check::positivity || c == Check::strong || c == Check::ric_operator ||
               c == Check::mu_bound;
      });

  std::vector<PointRecord> rows;
  if (pointwise || spec.format == OutputFormat::csv) {
    const std::vector<HPoint> pts = sample_grid(spec.config, spec.region, spec.seed);
    rows = evaluate_points(spec.config, pts, spec.threads);
  }

  Json checks_json;
  Json failures = Json::array();
  bool all_passed = true;

  auto record_failure = [&](Check c, const HPoint& p) {
    if (failures.size() < 20)
      failures.push_back(Json{{"check", check_name(c)}, {"point", point_to_json(p)}});
  };

  for (Check c : spec.checks) {
    switch (c) {
      case Check::positivity: {
        double best = 0.0;
        const PointRecord* arg = nullptr;
        bool pass = true;
        for (const PointRecord& r : rows) {
          if (!arg || r.rep.eigs[0] < best) { best = r.rep.eigs[0]; arg = &r; }
          if (!(r.rep.eigs[0] > 0.0)) { pass = false; record_failure(c, r.p); }
        }
        checks_json[check_name(c)] =
            Json{{"pass", pass},
                 {"min_eig", arg ? best : 0.0},
                 {"argmin_point", arg ? point_to_json(arg->p) : Json()}};
        all_passed = all_passed && pass;
        break;
      }
      case Check::strong: {
        double best = 0.0;
        const PointRecord* arg = nullptr;
        bool pass = true;
        for (const PointRecord& r : rows) {
          double ric0 = 0.0;
          for (double e : r.rep.eigs) ric0 += (e - r.rep.s / 4.0) * (e - r.rep.s / 4.0);
          const double margin = r.rep.s / (2.0 * std::sqrt(3.0)) - std::sqrt(ric0);
          if (!arg || margin < best) { best = margin; arg = &r; }
          if (!r.rep.flags.strongly_positive) { pass = false; record_failure(c, r.p); }
        }
        checks_json[check_name(c)] =
            Json{{"pass", pass},
                 {"min_margin", arg ? best : 0.0},
                 {"argmin_point", arg ? point_to_json(arg->p) : Json()}};
        all_passed = all_passed && pass;
        break;
      }
      case Check::ric_operator: {
        double best = 0.0;
        const PointRecord* arg = nullptr;
        bool pass = true;
        for (const PointRecord& r : rows) {
          const double mu12 = r.rep.q_eigs[0] + r.rep.q_eigs[1];
          if (!arg || mu12 < best) { best = mu12; arg = &r; }
          if (!(mu12 >= -kMuTol)) { pass = false; record_failure(c, r.p); }
        }
        checks_json[check_name(c)] =
            Json{{"pass", pass},
                 {"min_mu12", arg ? best : 0.0},
                 {"argmin_point", arg ? point_to_json(arg->p) : Json()}};
        all_passed = all_passed && pass;
        break;
      }
      case Check::mu_bound: {
        double best = 0.0;
        const PointRecord* arg = nullptr;
        bool pass = true;
        for (const PointRecord& r : rows) {
          const double mu13 = r.rep.q_eigs[0] + r.rep.q_eigs[2];
          if (!arg || mu13 < best) { best = mu13; arg = &r; }
          if (!(mu13 >= 1.0 - kMuTol)) { pass = false; record_failure(c, r.p); }
        }
        checks_json[check_name(c)] =
            Json{{"pass", pass},
                 {"min_mu13", arg ? best : 0.0},
                 {"argmin_point", arg ? point_to_json(arg->p) : Json()}};
        all_passed = all_passed && pass;
        break;
      }
      case Check::cluster: {
        const ClusterCertificate cert =
            cluster_certificate(spec.config, spec.region.eps, 10000, spec.seed, spec.threads);
        checks_json[check_name(c)] = certificate_to_json(spec.config, cert);
        if (!cert.passed) { all_passed = false; record_failure(c, cert.argmin); }
        break;
      }
      case Check::oracle: {
        const OracleSweepResult r = oracle_sweep(spec.config, spec.oracle_samples,
                                                 spec.oracle_step, spec.seed, spec.threads);
        const bool pass = r.max_rel_ricci < 1e-3 && r.max_residual < 1e-3;
        checks_json[check_name(c)] = Json{{"pass", pass},
                                          {"max_rel_ricci_discrepancy", r.max_rel_ricci},
                                          {"max_selfduality_residual", r.max_residual},
                                          {"samples", r.samples}};
        all_passed = all_passed && pass;
        break;
      }
      case Check::orbifold: {
        const OrbifoldPositivity v = orbifold_positivity(std::max(1, spec.config.n()));
        Json j{{"pass", v.positive_everywhere},
               {"positive_everywhere", v.positive_everywhere},
               {"positive_finite_r", v.positive_finite_r},
               {"limit_eta_over_zeta", v.limit_eta_over_zeta}};
        if (v.witness_r) {
          j["witness_r"] = *v.witness_r;
          j["witness_eta"] = orbifold_ricci(std::max(1, spec.config.n()), *v.witness_r).eta;
        }
        checks_json[check_name(c)] = j;
        all_passed = all_passed && v.positive_everywhere;
        break;
      }
    }
  }

  CertifyOutcome out;
  out.exit_code = all_passed ? 0 : 1;

  Json spec_json;
  spec_json["config"] = config_to_json(spec.config);
  spec_json["rmax"] = spec.region.rmax;
  spec_json["eps"] = spec.region.eps;
  spec_json["grid"] = spec.region.grid;
  Json names = Json::array();
  for (Check c : spec.checks) names.push_back(check_name(c));
  spec_json["checks"] = names;
  spec_json["seed"] = spec.seed;
  spec_json["format"] = spec.format == OutputFormat::json ? "json" : "csv";

  out.report["tool"] = "certify";
  out.report["spec"] = spec_json;
  out.report["points_evaluated"] = rows.size();
  out.report["checks"] = checks_json;
  out.report["all_passed"] = all_passed;
  out.report["failures"] = failures;

  out.rendered = spec.format == OutputFormat::csv ? render_csv(rows) : out.report.dump(2) + "\n";
  write_outcome(out, spec.out_path);
  return out;
}

CertifyOutcome run_oracle(const OracleSpec& spec) {
  if (spec.samples < 1) throw std::invalid_argument("oracle: needs samples >= 1");
  if (!(spec.step > 0.0) || spec.step > 0.1)
    throw std::invalid_argument("oracle: step must be in (0, 0.1]");

  CertifyOutcome out;
  Json j;
  j["tool"] = "oracle";
  if (spec.flat_sanity) {
    const ChartMetric flat = flat_chart();
    double worst = 0.0;
    for (int i = 0; i < spec.samples; ++i) {
      Rng rng = Rng::for_index(spec.seed, i);
      const Vec4 q{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                   rng.uniform(-1, 1)};
      const FDCurvature fd = fd_curvature(flat, q, spec.step);
      double m = std::abs(fd.scalar);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) m = std::max(m, std::abs(fd.riemann[a][b][c][d]));
      worst = std::max(worst, m);
    }
    const bool pass = worst < 1e-10;
    j["flat_sanity"] = Json{{"pass", pass}, {"max_curvature", worst}, {"samples", spec.samples}};
    j["all_passed"] = pass;
    out.exit_code = pass ? 0 : 1;
  } else {
    if (!spec.config.axisymmetric())
      throw std::invalid_argument("oracle: configuration must be axisymmetric");
    const OracleSweepResult r =
        oracle_sweep(spec.config, spec.samples, spec.step, spec.seed, spec.threads);
    const bool pass = r.max_rel_ricci < 1e-3 && r.max_residual < 1e-3;
    j["config"] = config_to_json(spec.config);
    j["samples"] = r.samples;
    j["step"] = spec.step;
    j["seed"] = spec.seed;
    j["max_rel_ricci_discrepancy"] = r.max_rel_ricci;
    j["max_selfduality_residual"] = r.max_residual;
    j["all_passed"] = pass;
    out.exit_code = pass ? 0 : 1;
  }
  out.report = j;
  out.rendered = j.dump(2) + "\n";
  write_outcome(out, spec.out_path);
  return out;
}

void write_outcome(const CertifyOutcome& outcome, const std::string& out_path) {
  if (out_path.empty()) return;
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
  f << outcome.rendered;
}

}  // namespace sdcurv
