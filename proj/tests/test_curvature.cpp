#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sdcurv/curvature.hpp"
#include "test_util.hpp"

using namespace sdcurv;

namespace {

Configuration cfg_n(int n, GaugeKind g, double sep = 0.8) {
  std::vector<double> seps(std::max(0, n - 1), sep);
  return collinear_config(seps, std::move(g));
}

HPoint safe_point(const Configuration& cfg, Rng& rng, double min_dist = 0.15) {
  for (int tries = 0; tries < 1000; ++tries) {
    const HPoint p = testutil::random_point(rng, 0.4, 4.0);
    bool ok = true;
    for (const HPoint& c : cfg.centers())
      if (dist(p, c) < min_dist) ok = false;
    if (ok) return p;
  }
  return {0.77, -0.31, 2.9};
}

// The Kaehler-gauge Ricci display: coefficients from the frame components
// (w1, w2, w3) of dV.
Sym4 log_z_display(const PotentialData& pd) {
  const double w1 = pd.dV.c1, w2 = pd.dV.c2, w3 = pd.dV.c3;
  Sym4 e;
  e.at(0, 0) = -w3 / pd.V;
  e.at(1, 1) = -w3 / pd.V;
  e.at(2, 2) = w3 / pd.V;
  e.at(3, 3) = w3 / pd.V;
  e.at(0, 2) = w1 / pd.V;
  e.at(1, 3) = w1 / pd.V;
  e.at(1, 2) = w2 / pd.V;
  e.at(0, 3) = -w2 / pd.V;
  return e;
}

}  // namespace

TEST_CASE("eig_sym4: diagonal, embedded block, spectral reconstruction") {
  const auto d = eig_sym4(Sym4::diag(4, 3, 2, 1));
  CHECK(d[0] == doctest::Approx(1.0));
  CHECK(d[1] == doctest::Approx(2.0));
  CHECK(d[2] == doctest::Approx(3.0));
  CHECK(d[3] == doctest::Approx(4.0));

  Sym4 block = Sym4::diag(0, 0, 5, -5);
  block.at(0, 0) = 1.75;
  block.at(1, 1) = 1.25;
  const auto e = eig_sym4(block);
  CHECK(e[1] == doctest::Approx(1.25));
  CHECK(e[2] == doctest::Approx(1.75));

  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    Sym4 t;
    for (int i = 0; i < 10; ++i) t.m[i] = rng.uniform(-3, 3);
    const EigSym4 full = eig_sym4_full(t);
    double resid = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double v = 0.0;
        for (int q = 0; q < 4; ++q) v += full.vals[q] * full.vecs[q][i] * full.vecs[q][j];
        resid = std::max(resid, std::abs(v - t(i, j)));
      }
    CHECK(resid < 1e-10);
    CHECK(full.vals[0] <= full.vals[1]);
    CHECK(full.vals[1] <= full.vals[2]);
    CHECK(full.vals[2] <= full.vals[3]);
  }
}

TEST_CASE("ricci_frame: zero gauge gives Ric = -2h exactly, any n") {
  Rng rng(13);
  for (int n : {1, 2, 3, 4}) {
    const Configuration cfg = cfg_n(n, GaugeKind::zero());
    for (int k = 0; k < 25; ++k) {
      const HPoint p = safe_point(cfg, rng);
      const Sym4 ric = ricci_frame(potential(cfg, p), gauge(cfg, p));
      CHECK(testutil::max_abs_diff(ric, Sym4::diag(-2, -2, -2, 0)) < 1e-12);
    }
  }
}

TEST_CASE("ricci_frame: n=1 Einstein gauge f = -r") {
  const Configuration cfg = cfg_n(1, GaugeKind::single_distance(0));
  Rng rng(17);
  for (int k = 0; k < 25; ++k) {
    const HPoint p = safe_point(cfg, rng, 0.05);
    const double r = dist(p, cfg.centers()[0]);
    const double want = 3.0 * (coth(r) - 1.0);
    const PotentialData pd = potential(cfg, p);
    const GaugeData gd = gauge(cfg, p);
    const Sym4 ric = ricci_frame(pd, gd);
    CHECK(testutil::max_abs_diff(ric, Sym4::diag(want, want, want, want)) < 1e-12);
    // rescale: (e^{2r} - 1) * 3 (coth r - 1) = 6
    const Sym4 ricp = orthonormal_rescale(ric, pd, gd);
    CHECK(testutil::max_abs_diff(ricp, Sym4::diag(6, 6, 6, 6)) < 1e-10);
    CHECK(scalar_curv(pd, gd) == doctest::Approx(24.0).epsilon(1e-12));
  }
}

TEST_CASE("ricci_frame: log_z gauge matches the Kaehler display, n = 1 and 2") {
  Rng rng(19);
  for (int n : {1, 2}) {
    const Configuration cfg = cfg_n(n, GaugeKind::log_z());
    for (int k = 0; k < 25; ++k) {
      const HPoint p = safe_point(cfg, rng);
      const PotentialData pd = potential(cfg, p);
      const GaugeData gd = gauge(cfg, p);
      CHECK(testutil::max_abs_diff(ricci_frame(pd, gd), log_z_display(pd)) < 1e-10);
      CHECK(scalar_curv(pd, gd) == 0.0);  // -1 - (-2) - 1 vanishes exactly
    }
  }
}

TEST_CASE("scalar_curv: zero gauge gives -6/V") {
  const Configuration cfg = cfg_n(2, GaugeKind::zero());
  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    const HPoint p = safe_point(cfg, rng);
    const PotentialData pd = potential(cfg, p);
    CHECK(scalar_curv(pd, gauge(cfg, p)) == doctest::Approx(-6.0 / pd.V).epsilon(1e-14));
    CHECK(scalar_curv(pd, gauge(cfg, p)) < 0.0);
  }
}

TEST_CASE("schouten_q: zero gauge block values and the Ric - (s/6) g identity") {
  Rng rng(29);
  const Configuration cfg0 = cfg_n(2, GaugeKind::zero());
  const HPoint p0 = safe_point(cfg0, rng);
  CHECK(testutil::max_abs_diff(schouten_q(potential(cfg0, p0), gauge(cfg0, p0)),
                               Sym4::diag(-1, -1, -1, 1)) < 1e-13);

  for (int n : {1, 2, 3}) {
    for (auto make : {&GaugeKind::zero, &GaugeKind::mean_distance, &GaugeKind::log_z}) {
      const Configuration cfg = cfg_n(n, make());
      for (int k = 0; k < 10; ++k) {
        const HPoint p = safe_point(cfg, rng);
        const PotentialData pd = potential(cfg, p);
        const GaugeData gd = gauge(cfg, p);
        const Sym4 direct = schouten_q(pd, gd);
        Sym4 via_ric = ricci_frame(pd, gd);
        const double sg6 = scalar_curv(pd, gd) / 6.0 * metric_coefficient(pd, gd);
        for (int i = 0; i < 4; ++i) via_ric.at(i, i) -= sg6;
        CHECK(testutil::max_abs_diff(direct, via_ric) < 1e-12);
      }
    }
  }
}

TEST_CASE("schouten_q: Einstein n=1 has Q' = (s/12) Id = 2 Id") {
  const Configuration cfg = cfg_n(1, GaugeKind::single_distance(0));
  Rng rng(31);
  const HPoint p = safe_point(cfg, rng);
  const PotentialData pd = potential(cfg, p);
  const GaugeData gd = gauge(cfg, p);
  const Sym4 qp = orthonormal_rescale(schouten_q(pd, gd), pd, gd);
  CHECK(testutil::max_abs_diff(qp, Sym4::diag(2, 2, 2, 2)) < 1e-10);
}

TEST_CASE("orthonormal_rescale: identity and the coth = 2 factor") {
  PotentialData pd;  // V = 1
  GaugeData gd;      // f = 0
  CHECK(testutil::max_abs_diff(orthonormal_rescale(Sym4::identity(), pd, gd),
                               Sym4::identity()) == 0.0);

  // r1 = r2 = half log 3: e^{r1+r2} = 3, coth sum = 4, factor 3/2.
  const double r = 0.5 * std::log(3.0);
  PotentialData pd2;
  pd2.V = 0.5 * (coth(r) + coth(r));
  GaugeData gd2;
  gd2.f = -r;
  const Sym4 scaled = orthonormal_rescale(Sym4::identity(), pd2, gd2);
  CHECK(scaled(0, 0) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("gauge-constant invariance: f -> f + c fixes Ric, scales s by e^{-2c}") {
  const double c = 0.37;
  const HPoint center{0, 0, 1};
  CustomGauge shifted;
  shifted.f = [=](const HPoint& q) { return -dist(q, center) + c; };
  shifted.df = [=](const HPoint& q) { return -1.0 * dr_covector(q, center); };
  shifted.ddf = [=](const HPoint& q) { return -1.0 * hess_dist(q, center); };
  shifted.lapf = [=](const HPoint& q) { return -2.0 * coth(dist(q, center)); };

  const Configuration base({center}, GaugeKind::single_distance(0));
  const Configuration moved({center}, GaugeKind::custom(shifted));
  Rng rng(37);
  for (int k = 0; k < 10; ++k) {
    const HPoint p = safe_point(base, rng);
    const PotentialData pd = potential(base, p);
    CHECK(testutil::max_abs_diff(ricci_frame(pd, gauge(base, p)),
                                 ricci_frame(pd, gauge(moved, p))) < 1e-12);
    CHECK(scalar_curv(pd, gauge(moved, p)) ==
          doctest::Approx(std::exp(-2.0 * c) * scalar_curv(pd, gauge(base, p)))
              .epsilon(1e-12));
  }
}

TEST_CASE("trace identity: trace(Ric') = s for n in {1,2,3}") {
  Rng rng(41);
  for (int n : {1, 2, 3}) {
    const Configuration cfg = cfg_n(n, GaugeKind::mean_distance());
    for (int k = 0; k < 20; ++k) {
      const HPoint p = safe_point(cfg, rng);
      const PotentialData pd = potential(cfg, p);
      const GaugeData gd = gauge(cfg, p);
      const Sym4 ricp = orthonormal_rescale(ricci_frame(pd, gd), pd, gd);
      const double s = scalar_curv(pd, gd);
      CHECK(ricp.trace() == doctest::Approx(s).epsilon(1e-9));
    }
  }
}

TEST_CASE("isometry equivariance: eigenvalues fixed under z-scaling/translation") {
  const Configuration cfg({{0.2, -0.1, 1.0}, {0.5, 0.3, 2.1}}, GaugeKind::mean_distance());
  Rng rng(43);
  for (int k = 0; k < 10; ++k) {
    const double lam = rng.uniform(0.3, 3.0);
    const double tx = rng.uniform(-2, 2), ty = rng.uniform(-2, 2);
    std::vector<HPoint> moved;
    for (const HPoint& c : cfg.centers())
      moved.push_back({lam * (c.x + tx), lam * (c.y + ty), lam * c.z});
    const Configuration cfg2(moved, GaugeKind::mean_distance());
    const HPoint p = safe_point(cfg, rng);
    const HPoint p2{lam * (p.x + tx), lam * (p.y + ty), lam * p.z};
    const CurvatureReport a = evaluate_report(cfg, p);
    const CurvatureReport b = evaluate_report(cfg2, p2);
    for (int i = 0; i < 4; ++i) {
      CHECK(a.eigs[i] == doctest::Approx(b.eigs[i]).epsilon(1e-9));
      CHECK(a.q_eigs[i] == doctest::Approx(b.q_eigs[i]).epsilon(1e-9));
    }
    CHECK(a.s == doctest::Approx(b.s).epsilon(1e-11));
  }
}

TEST_CASE("classify: worked examples") {
  const CurvatureReport e = classify(Sym4::diag(6, 6, 6, 6), 24.0);
  CHECK(e.flags.positive_ricci);
  CHECK(e.flags.strongly_positive);
  CHECK(e.flags.ric_operator_nonneg);
  CHECK(e.gb_integrand == doctest::Approx(48.0));
  REQUIRE(e.lambda.has_value());
  CHECK((*e.lambda)[0] == doctest::Approx(0.25));

  const CurvatureReport neg = classify(Sym4::diag(1, 1, 1, -0.1), 2.9);
  CHECK_FALSE(neg.flags.positive_ricci);

  // eigs - s/4 = (0.75, -0.25, -0.25, -0.25): |Ric0|^2 = 0.75 < 25/12
  const CurvatureReport st = classify(Sym4::diag(2, 1, 1, 1), 5.0);
  CHECK(st.flags.strongly_positive);
  CHECK(st.gb_integrand == doctest::Approx(25.0 / 12.0 - 0.75));

  const CurvatureReport flat = classify(Sym4::diag(0, 0, 0, 0), 0.0);
  CHECK_FALSE(flat.lambda.has_value());
  CHECK_FALSE(flat.flags.strongly_positive);
}

TEST_CASE("classify: cube-in-insphere implications on random reports") {
  Rng rng(47);
  for (int k = 0; k < 4000; ++k) {
    Sym4 t;
    for (int i = 0; i < 10; ++i) t.m[i] = rng.uniform(-2, 4);
    const double s = t.trace();
    const CurvatureReport rep = classify(t, s);
    if (rep.flags.strongly_positive) CHECK(rep.flags.positive_ricci);
    if (rep.flags.ric_operator_nonneg && s > 0.0) {
      double ric0 = 0.0;
      for (double e : rep.eigs) ric0 += (e - s / 4.0) * (e - s / 4.0);
      CHECK(std::sqrt(ric0) <= s / (2.0 * std::sqrt(3.0)) + 1e-12);
    }
  }
}
