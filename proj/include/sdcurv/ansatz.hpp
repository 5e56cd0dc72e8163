#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "sdcurv/hyperbolic3.hpp"

// Harmonic potential V = 1 + sum_j G(r_j), its differential, and the
// conformal gauge f with every derivative the curvature formulas need.

namespace sdcurv {

enum class GaugeTag { zero, mean_distance, single_distance, log_z, custom };

// User-supplied gauge; f, df, Ddf and the Laplacian must be mutually
// consistent (verified by finite differences when a Configuration is built).
struct CustomGauge {
  std::function<double(const HPoint&)> f;
  std::function<Covector3(const HPoint&)> df;
  std::function<SymForm3(const HPoint&)> ddf;
  std::function<double(const HPoint&)> lapf;
};

class GaugeKind {
 public:
  static GaugeKind zero() { return GaugeKind(GaugeTag::zero); }
  static GaugeKind mean_distance() { return GaugeKind(GaugeTag::mean_distance); }
  static GaugeKind single_distance(int center_index) {
    GaugeKind g(GaugeTag::single_distance);
    g.index_ = center_index;
    return g;
  }
  static GaugeKind log_z() { return GaugeKind(GaugeTag::log_z); }
  static GaugeKind custom(CustomGauge fns);

  GaugeTag tag() const { return tag_; }
  int index() const { return index_; }
  const CustomGauge& custom_fns() const { return *custom_; }

 private:
  explicit GaugeKind(GaugeTag t) : tag_(t) {}
  GaugeTag tag_;
  int index_ = 0;
  std::shared_ptr<const CustomGauge> custom_;
};

// Immutable center list plus gauge selector. Centers must be pairwise
// distinct; custom gauges are derivative-checked on construction.
class Configuration {
 public:
  Configuration(std::vector<HPoint> centers, GaugeKind gauge);

  const std::vector<HPoint>& centers() const { return centers_; }
  const GaugeKind& gauge() const { return gauge_; }
  int n() const { return static_cast<int>(centers_.size()); }

  Configuration with_gauge(GaugeKind g) const { return Configuration(centers_, std::move(g)); }

  // True when every center sits on one vertical geodesic x = x0, y = y0.
  bool axisymmetric() const;

 private:
  std::vector<HPoint> centers_;
  GaugeKind gauge_;
};

struct PotentialData {
  double V = 1.0;
  Covector3 dV;
};

struct GaugeData {
  double f = 0.0;
  Covector3 df;
  SymForm3 Ddf;
  double lapf = 0.0;
};

// V and dV at p. Rejects evaluation within 1e-8 of a center.
PotentialData potential(const Configuration& cfg, const HPoint& p);

// f, df, Ddf, and lapf = trace(Ddf) at p.
GaugeData gauge(const Configuration& cfg, const HPoint& p);

// Centers on the vertical geodesic through (0,0,1) at the given consecutive
// hyperbolic separations: z_1 = 1, z_{k+1} = z_k * exp(sep_k).
Configuration collinear_config(const std::vector<double>& separations, GaugeKind gauge);

}  // namespace sdcurv
