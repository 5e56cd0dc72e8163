#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "sdcurv/curvature.hpp"

// Orbifold-limit Ricci formulas (n coincident centers, V = 1 + nG, f = -r)
// and the near-cluster machinery for three collinear centers: the leading
// curvature form R-hat, its angular bound functions, and the eigenvalue
// certificate min eig(R-hat) > (sum 1/r_j)^2 > V^2 on small balls.

namespace sdcurv {

struct OrbifoldRicci {
  double zeta;  // coefficient of dr^2 + (V^{-1}theta)^2
  double eta;   // coefficient of h - dr^2; zeta >= eta always
};

// zeta = (coth r - 1)/(2 + n(coth r - 1)) * (4 + 3n coth r - n),
// eta  = same prefactor * (8 + 3n coth r - 5n).
OrbifoldRicci orbifold_ricci(int n, double r);

struct OrbifoldPositivity {
  bool positive_finite_r;       // eta > 0 for every finite r > 0
  bool positive_everywhere;     // additionally positive in the r -> inf limit
  double limit_eta_over_zeta;   // (8 - 2n) / (4 + 2n)
  std::optional<double> witness_r;  // some r with eta < 0, when one exists
};

// Sign analysis of 8 + 3n c - 5n over c = coth r in (1, inf), plus an r-grid
// scan. Positive everywhere iff n <= 3; n = 4 is non-negative with boundary
// limit 0; n >= 5 has a negative witness.
OrbifoldPositivity orbifold_positivity(int n);

struct ClusterFrameData {
  std::array<double, 3> r{};    // distances to the three centers, all > 0
  std::array<double, 3> phi{};  // angles of dr_j against e^1; sum sin phi_j = 0
  double kappa = 0.0;           // sum cos phi_j
};

// Validates r_j > 0 and the sine constraint (to 1e-10).
ClusterFrameData make_cluster_frame(const std::array<double, 3>& r,
                                    const std::array<double, 3>& phi);

struct ClusterRealization {
  ClusterFrameData data;
  Covector3 e1, e2, e3;
};

// Geometric realization at p: e^1 || dr_1 + dr_2 + dr_3, e^2 the in-plane
// complement. The sine constraint then holds automatically (verified).
ClusterRealization realize_cluster_frame(const Configuration& cfg, const HPoint& p);

// The leading curvature form: R11, R22, R12, R33, R44, R34 per the
// two-index 1/(r_j r_k) expansion; all other components zero.
Sym4 rhat(const ClusterFrameData& data);

struct BoundValues {
  std::array<double, 3> a{};        // a_j  >= 1
  std::array<double, 3> b{};        // b_j  >= 1
  std::array<double, 3> a_pairs{};  // a_jk >= 4, pairs (12, 13, 23)
  std::array<double, 3> b_pairs{};  // b_jk >= 4
};

// Simplified forms: a_j = 3 + sum_{k!=j} cos(phi_j + phi_k - 2 theta), etc.
BoundValues bound_functions(const std::array<double, 3>& phi, double theta);
// Direct quadratic-form definitions (cross-check of the simplification).
BoundValues bound_functions_trig(const std::array<double, 3>& phi, double theta);

struct ClusterCertificate {
  double epsilon = 0.0;
  int samples = 0;
  uint64_t seed = 0;
  bool passed = false;
  double min_eig_margin = 0.0;  // min over samples of (min eig - bound)/bound
  double min_eig = 0.0;         // at the worst sample
  double bound_at_min = 0.0;    // max((sum 1/r_j)^2, V^2) there
  HPoint argmin;
  double max_sine_residual = 0.0;  // worst |sum sin phi_j| seen
};

// Samples the epsilon-balls around three collinear centers (log-uniform radii
// in [1e-3 eps, eps]) and certifies min eig(R-hat) > max((sum 1/r_j)^2, V^2).
// Requires collinear centers and eps < 1/2.
ClusterCertificate cluster_certificate(const Configuration& cfg, double epsilon, int samples,
                                       uint64_t seed, int threads = 0);

}  // namespace sdcurv
