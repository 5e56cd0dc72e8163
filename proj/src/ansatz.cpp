#include "sdcurv/ansatz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sdcurv/fd3.hpp"

namespace sdcurv {

namespace {

constexpr double kCenterExclusion = 1e-8;

void check_custom_gauge(const CustomGauge& g) {
  if (!g.f || !g.df || !g.ddf || !g.lapf)
    throw std::invalid_argument("custom gauge: all four functions are required");
  // Derivative consistency at 8 fixed pseudo-random points.
  std::mt19937_64 rng(0x5dca11u);
  auto u = [&](double a, double b) {
    return a + (b - a) * ((rng() >> 11) * 0x1.0p-53);
  };
  for (int k = 0; k < 8; ++k) {
    HPoint p{u(-1.5, 1.5), u(-1.5, 1.5), u(0.6, 2.2)};
    const Covector3 df_fd = fd_frame_gradient(g.f, p);
    const Covector3 df = g.df(p);
    const SymForm3 dd_fd = fd_frame_hessian(g.f, p);
    const SymForm3 dd = g.ddf(p);
    const double scale = 1.0 + norm(df) + std::abs(g.lapf(p));
    if (norm(df - df_fd) > 1e-4 * scale)
      throw std::invalid_argument("custom gauge: df inconsistent with f");
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        if (std::abs(dd(i, j) - dd_fd(i, j)) > 1e-3 * scale)
          throw std::invalid_argument("custom gauge: Ddf inconsistent with f");
    if (std::abs(g.lapf(p) - dd.trace()) > 1e-8 * scale)
      throw std::invalid_argument("custom gauge: lapf inconsistent with trace(Ddf)");
  }
}

}  // namespace

GaugeKind GaugeKind::custom(CustomGauge fns) {
  GaugeKind g(GaugeTag::custom);
  g.custom_ = std::make_shared<const CustomGauge>(std::move(fns));
  return g;
}

Configuration::Configuration(std::vector<HPoint> centers, GaugeKind gauge)
    : centers_(std::move(centers)), gauge_(std::move(gauge)) {
  for (const HPoint& c : centers_)
    if (!(c.z > 0.0)) throw std::invalid_argument("Configuration: center needs z > 0");
  for (size_t i = 0; i < centers_.size(); ++i)
    for (size_t j = i + 1; j < centers_.size(); ++j)
      if (dist(centers_[i], centers_[j]) < kCenterExclusion)
        throw std::invalid_argument("Configuration: centers must be pairwise distinct");
  if (gauge_.tag() == GaugeTag::single_distance &&
      (gauge_.index() < 0 || gauge_.index() >= n()))
    throw std::invalid_argument("Configuration: single_distance index out of range");
  if ((gauge_.tag() == GaugeTag::mean_distance || gauge_.tag() == GaugeTag::single_distance) &&
      centers_.empty())
    throw std::invalid_argument("Configuration: distance gauge needs at least one center");
  if (gauge_.tag() == GaugeTag::custom) check_custom_gauge(gauge_.custom_fns());
}

bool Configuration::axisymmetric() const {
  for (const HPoint& c : centers_)
    if (std::abs(c.x - centers_.front().x) > 1e-12 || std::abs(c.y - centers_.front().y) > 1e-12)
      return false;
  return true;
}

PotentialData potential(const Configuration& cfg, const HPoint& p) {
  if (!(p.z > 0.0)) throw std::invalid_argument("potential: point needs z > 0");
  PotentialData out;
  for (const HPoint& c : cfg.centers()) {
    const double r = dist(p, c);
    if (r < kCenterExclusion)
      throw std::invalid_argument("potential: evaluation at a center (pole)");
    out.V += green(r);
    out.dV += dgreen(r) * dr_covector(p, c);
  }
  return out;
}

GaugeData gauge(const Configuration& cfg, const HPoint& p) {
  if (!(p.z > 0.0)) throw std::invalid_argument("gauge: point needs z > 0");
  GaugeData out;
  switch (cfg.gauge().tag()) {
    case GaugeTag::zero:
      return out;
    case GaugeTag::log_z:
      // f = log z: |df| = 1, Ddf = -diag(1,1,0), lapf = -2, all exact.
      out.f = std::log(p.z);
      out.df = {0.0, 0.0, 1.0};
      out.Ddf.at(0, 0) = -1.0;
      out.Ddf.at(1, 1) = -1.0;
      out.lapf = -2.0;
      return out;
    case GaugeTag::mean_distance:
    case GaugeTag::single_distance: {
      const int n = cfg.n();
      const bool single = cfg.gauge().tag() == GaugeTag::single_distance;
      const double weight = single ? 1.0 : 1.0 / n;
      for (int j = 0; j < n; ++j) {
        if (single && j != cfg.gauge().index()) continue;
        const HPoint& c = cfg.centers()[j];
        const double r = dist(p, c);
        if (r < kCenterExclusion)
          throw std::invalid_argument("gauge: evaluation at a center");
        out.f -= weight * r;
        out.df += (-weight) * dr_covector(p, c);
        out.Ddf += (-weight) * hess_dist(p, c);
        out.lapf -= weight * 2.0 * coth(r);
      }
      return out;
    }
    case GaugeTag::custom: {
      const CustomGauge& g = cfg.gauge().custom_fns();
      out.f = g.f(p);
      out.df = g.df(p);
      out.Ddf = g.ddf(p);
      out.lapf = g.lapf(p);
      return out;
    }
  }
  throw std::logic_error("gauge: unreachable");
}

Configuration collinear_config(const std::vector<double>& separations, GaugeKind gauge) {
  std::vector<HPoint> centers;
  centers.push_back({0.0, 0.0, 1.0});
  double z = 1.0;
  for (double s : separations) {
    if (!(s > 0.0)) throw std::invalid_argument("collinear_config: separations must be > 0");
    z *= std::exp(s);
    centers.push_back({0.0, 0.0, z});
  }
  return Configuration(std::move(centers), std::move(gauge));
}

}  // namespace sdcurv
