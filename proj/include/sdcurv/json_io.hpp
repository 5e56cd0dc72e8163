#pragma once

#include <json.hpp>

#include "sdcurv/asymptotics_n3.hpp"
#include "sdcurv/curvature.hpp"

// JSON wire formats. Field names and order are part of the report contract;
// everything serializes through ordered_json so identical inputs give
// byte-identical files.

namespace sdcurv {

using Json = nlohmann::ordered_json;

// {"centers": [[x,y,z],...], "gauge": "zero"|"mean_distance"|"log_z"
//                                     | {"single_distance": k}}
Json config_to_json(const Configuration& cfg);
Configuration config_from_json(const Json& j);

// {point, s, eigs, q_eigs, flags, gb_integrand}
Json report_to_json(const HPoint& p, const CurvatureReport& rep);

// {config, epsilon, samples, min_eig_margin, passed, ...}
Json certificate_to_json(const Configuration& cfg, const ClusterCertificate& cert);

Json point_to_json(const HPoint& p);

}  // namespace sdcurv
