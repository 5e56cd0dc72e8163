#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sdcurv/ansatz.hpp"
#include "sdcurv/curvature.hpp"
#include "sdcurv/fd3.hpp"
#include "test_util.hpp"

using namespace sdcurv;
using testutil::flux_star;

namespace {

const double kHalfLog3 = 0.5 * std::log(3.0);

Configuration cfg_n(int n, GaugeKind g) {
  std::vector<double> seps(std::max(0, n - 1), 0.8);
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

}  // namespace

TEST_CASE("collinear_config: separations realized on the vertical geodesic") {
  const Configuration two = collinear_config({1.0}, GaugeKind::mean_distance());
  REQUIRE(two.n() == 2);
  CHECK(two.centers()[0].z == doctest::Approx(1.0));
  CHECK(two.centers()[1].z == doctest::Approx(std::exp(1.0)));

  const Configuration one = collinear_config({}, GaugeKind::zero());
  REQUIRE(one.n() == 1);
  CHECK(one.centers()[0].z == doctest::Approx(1.0));

  const Configuration three = collinear_config({0.1, 0.1}, GaugeKind::mean_distance());
  REQUIRE(three.n() == 3);
  CHECK(dist(three.centers()[0], three.centers()[1]) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(dist(three.centers()[1], three.centers()[2]) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(dist(three.centers()[0], three.centers()[2]) == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(collinear_config({-0.5}, GaugeKind::zero()), std::invalid_argument);
  CHECK_THROWS_AS(collinear_config({0.0}, GaugeKind::zero()), std::invalid_argument);
}

TEST_CASE("Configuration: validation") {
  CHECK_THROWS_AS(Configuration({{0, 0, 1}, {0, 0, 1}}, GaugeKind::zero()),
                  std::invalid_argument);
  CHECK_THROWS_AS(Configuration({{0, 0, -1}}, GaugeKind::zero()), std::invalid_argument);
  CHECK_THROWS_AS(Configuration({{0, 0, 1}}, GaugeKind::single_distance(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Configuration({}, GaugeKind::mean_distance()), std::invalid_argument);
}

TEST_CASE("potential: empty sum, n=1 value, n=2 identity") {
  const Configuration empty({}, GaugeKind::zero());
  const PotentialData pd0 = potential(empty, {0.4, 0.1, 2.2});
  CHECK(pd0.V == 1.0);
  CHECK(norm(pd0.dV) == 0.0);

  const Configuration one = cfg_n(1, GaugeKind::zero());
  const HPoint p1 = hyperbolic_sphere_point(one.centers()[0], kHalfLog3, 0.3, 0.9);
  CHECK(potential(one, p1).V == doctest::Approx(1.5).epsilon(1e-13));

  // n = 2: V = (coth r1 + coth r2)/2
  const Configuration two = cfg_n(2, GaugeKind::zero());
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const HPoint p = safe_point(two, rng);
    const double r1 = dist(p, two.centers()[0]), r2 = dist(p, two.centers()[1]);
    CHECK(potential(two, p).V ==
          doctest::Approx(0.5 * (coth(r1) + coth(r2))).epsilon(1e-13));
    CHECK(potential(two, p).V >= 1.0);  // every Green term is positive
  }

  CHECK_THROWS_AS(potential(one, one.centers()[0]), std::invalid_argument);
}

TEST_CASE("potential: V is harmonic (FD trace) and dV matches FD gradient") {
  Rng rng(17);
  for (int n : {1, 2, 3, 4}) {
    const Configuration cfg = cfg_n(n, GaugeKind::zero());
    for (int k = 0; k < 6; ++k) {
      const HPoint p = safe_point(cfg, rng, 0.35);
      auto Vf = [&](const HPoint& q) { return potential(cfg, q).V; };
      const SymForm3 H = fd_frame_hessian(Vf, p);
      CHECK(std::abs(H.trace()) < 1e-5);
      const Covector3 g = fd_frame_gradient(Vf, p);
      CHECK(norm(g - potential(cfg, p).dV) < 1e-7);
    }
  }
}

TEST_CASE("potential/gauge: permutation invariance") {
  const std::vector<HPoint> centers{{0.1, 0.2, 1.0}, {-0.4, 0.0, 1.7}, {0.3, -0.5, 2.4}};
  std::vector<HPoint> shuffled{centers[2], centers[0], centers[1]};
  const Configuration a(centers, GaugeKind::mean_distance());
  const Configuration b(shuffled, GaugeKind::mean_distance());
  Rng rng(29);
  for (int k = 0; k < 10; ++k) {
    const HPoint p = safe_point(a, rng);
    CHECK(potential(a, p).V == doctest::Approx(potential(b, p).V).epsilon(1e-15));
    CHECK(norm(potential(a, p).dV - potential(b, p).dV) < 1e-15);
    CHECK(gauge(a, p).f == doctest::Approx(gauge(b, p).f).epsilon(1e-15));
    CHECK(norm(gauge(a, p).df - gauge(b, p).df) < 1e-15);
  }
}

TEST_CASE("gauge: zero and log_z closed forms") {
  const Configuration cfg = cfg_n(2, GaugeKind::zero());
  const HPoint p{0.3, -0.8, 1.9};
  const GaugeData z = gauge(cfg, p);
  CHECK(z.f == 0.0);
  CHECK(norm(z.df) == 0.0);
  CHECK(z.Ddf.trace() == 0.0);
  CHECK(z.lapf == 0.0);

  const Configuration lz = cfg_n(2, GaugeKind::log_z());
  const GaugeData l = gauge(lz, p);
  CHECK(l.f == doctest::Approx(std::log(p.z)));
  CHECK(norm2(l.df) == doctest::Approx(1.0));
  CHECK(l.lapf == -2.0);
  const auto eigs = eig_sym3(l.Ddf);
  CHECK(eigs[0] == doctest::Approx(-1.0));
  CHECK(eigs[1] == doctest::Approx(-1.0));
  CHECK(eigs[2] == doctest::Approx(0.0));
  CHECK(l.Ddf.trace() == doctest::Approx(l.lapf).epsilon(1e-12));
}

TEST_CASE("gauge: mean distance closed forms and FD consistency") {
  const Configuration cfg = cfg_n(2, GaugeKind::mean_distance());
  // place p so that coth r1 = coth r2 = 2
  const HPoint mid = hyperbolic_sphere_point(cfg.centers()[0], 0.4, 1.0, 0.0);
  (void)mid;
  Rng rng(41);
  for (int k = 0; k < 12; ++k) {
    const HPoint p = safe_point(cfg, rng, 0.3);
    const GaugeData g = gauge(cfg, p);
    const double r1 = dist(p, cfg.centers()[0]), r2 = dist(p, cfg.centers()[1]);
    CHECK(g.f == doctest::Approx(-(r1 + r2) / 2).epsilon(1e-14));
    CHECK(g.lapf == doctest::Approx(-(coth(r1) + coth(r2))).epsilon(1e-13));
    CHECK(g.Ddf.trace() == doctest::Approx(g.lapf).epsilon(1e-11));
    CHECK(norm(g.df) <= 1.0 + 1e-13);  // mean of unit covectors

    auto ff = [&](const HPoint& q) { return gauge(cfg, q).f; };
    CHECK(norm(fd_frame_gradient(ff, p) - g.df) < 1e-7);
    const SymForm3 fdH = fd_frame_hessian(ff, p);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) CHECK(std::abs(fdH(i, j) - g.Ddf(i, j)) < 1e-5);
  }
}

TEST_CASE("gauge: trace identity at the coth = 2 shell") {
  // point equidistant (r = half log 3) from both centers of a short config
  const Configuration cfg = collinear_config({2.0 * kHalfLog3}, GaugeKind::mean_distance());
  // perpendicular bisector plane of the vertical segment: z = sqrt(z1 z2) ring
  const double zmid = std::sqrt(cfg.centers()[0].z * cfg.centers()[1].z);
  // solve for x with dist((x,0,zmid), c1) = half log 3
  double lo = 0.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double x = 0.5 * (lo + hi);
    (dist({x, 0, zmid}, cfg.centers()[0]) < kHalfLog3 ? lo : hi) = x;
  }
  const HPoint p{0.5 * (lo + hi), 0, zmid};
  const double r1 = dist(p, cfg.centers()[0]), r2 = dist(p, cfg.centers()[1]);
  CHECK(coth(r1) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(coth(r2) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(gauge(cfg, p).Ddf.trace() == doctest::Approx(-4.0).epsilon(1e-9));
}

TEST_CASE("gauge: custom validation accepts consistent, rejects broken") {
  CustomGauge good;
  good.f = [](const HPoint& p) { return std::log(p.z); };
  good.df = [](const HPoint&) { return Covector3{0, 0, 1}; };
  good.ddf = [](const HPoint&) {
    SymForm3 s;
    s.at(0, 0) = -1;
    s.at(1, 1) = -1;
    return s;
  };
  good.lapf = [](const HPoint&) { return -2.0; };
  CHECK_NOTHROW(Configuration({{0, 0, 5.0}}, GaugeKind::custom(good)));

  CustomGauge bad = good;
  bad.df = [](const HPoint&) { return Covector3{0, 0, -1}; };  // wrong sign
  CHECK_THROWS_AS(Configuration({{0, 0, 5.0}}, GaugeKind::custom(bad)),
                  std::invalid_argument);
}

TEST_CASE("potential: flux of *dV / 2 pi around any single center is -1") {
  const Configuration cfg = cfg_n(3, GaugeKind::zero());
  auto omega = [&](const HPoint& q) { return potential(cfg, q).dV; };
  for (const HPoint& c : cfg.centers()) {
    const double flux = flux_star(omega, c, 0.2);
    CHECK(flux / (2.0 * M_PI) == doctest::Approx(-1.0).epsilon(1e-7));
  }
}
