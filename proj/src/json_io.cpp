#include "sdcurv/json_io.hpp"

#include <stdexcept>

namespace sdcurv {

Json point_to_json(const HPoint& p) { return Json::array({p.x, p.y, p.z}); }

Json config_to_json(const Configuration& cfg) {
  Json j;
  Json centers = Json::array();
  for (const HPoint& c : cfg.centers()) centers.push_back(point_to_json(c));
  j["centers"] = centers;
  switch (cfg.gauge().tag()) {
    case GaugeTag::zero: j["gauge"] = "zero"; break;
    case GaugeTag::mean_distance: j["gauge"] = "mean_distance"; break;
    case GaugeTag::log_z: j["gauge"] = "log_z"; break;
    case GaugeTag::single_distance: j["gauge"] = Json{{"single_distance", cfg.gauge().index()}}; break;
    case GaugeTag::custom: j["gauge"] = "custom"; break;
  }
  return j;
}

Configuration config_from_json(const Json& j) {
  if (!j.contains("centers") || !j["centers"].is_array())
    throw std::invalid_argument("config: missing centers array");
  std::vector<HPoint> centers;
  for (const auto& c : j["centers"]) {
    if (!c.is_array() || c.size() != 3)
      throw std::invalid_argument("config: each center must be [x, y, z]");
    centers.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
  }
  GaugeKind gauge = GaugeKind::mean_distance();
  if (j.contains("gauge")) {
    const auto& g = j["gauge"];
    if (g.is_string()) {
      const std::string s = g.get<std::string>();
      if (s == "zero") gauge = GaugeKind::zero();
      else if (s == "mean_distance") gauge = GaugeKind::mean_distance();
      else if (s == "log_z") gauge = GaugeKind::log_z();
      else throw std::invalid_argument("config: unknown gauge '" + s + "'");
    } else if (g.is_object() && g.contains("single_distance")) {
      gauge = GaugeKind::single_distance(g["single_distance"].get<int>());
    } else {
      throw std::invalid_argument("config: malformed gauge field");
    }
  } else if (centers.empty()) {
    gauge = GaugeKind::zero();
  }
  return Configuration(std::move(centers), gauge);
}

Json report_to_json(const HPoint& p, const CurvatureReport& rep) {
  Json j;
  j["point"] = point_to_json(p);
  j["s"] = rep.s;
  j["eigs"] = rep.eigs;
  j["q_eigs"] = rep.q_eigs;
  j["flags"] = Json{{"positive_ricci", rep.flags.positive_ricci},
                    {"strongly_positive", rep.flags.strongly_positive},
                    {"ric_operator_nonneg", rep.flags.ric_operator_nonneg}};
  j["gb_integrand"] = rep.gb_integrand;
  return j;
}

Json certificate_to_json(const Configuration& cfg, const ClusterCertificate& cert) {
  Json j;
  j["config"] = config_to_json(cfg);
  j["epsilon"] = cert.epsilon;
  j["samples"] = cert.samples;
  j["seed"] = cert.seed;
  j["min_eig_margin"] = cert.min_eig_margin;
  j["passed"] = cert.passed;
  j["min_eig"] = cert.min_eig;
  j["bound_at_min"] = cert.bound_at_min;
  j["argmin_point"] = point_to_json(cert.argmin);
  j["max_sine_residual"] = cert.max_sine_residual;
  return j;
}

}  // namespace sdcurv
