#pragma once

#include "sdcurv/curvature.hpp"

// Explicit two-center analysis: the invariants (alpha, beta, gamma), the
// half-angle phi between dr_1 and dr_2, the closed-form Q component table in
// the frame {e^1 || dr_1 + dr_2, e^2 || dr_1 - dr_2, e^3, V^{-1} theta}, and
// the mu_1 + mu_3 > 1 certificate.

namespace sdcurv {

struct Abg {
  double alpha;  // coth r1 + coth r2 - 2
  double beta;   // (coth^2 r1 + coth^2 r2 - 2) / (coth r1 + coth r2)
  double gamma;  // coth r1 - coth r2
};

// alpha > beta > |gamma| for all finite r1, r2 > 0.
Abg abg(double r1, double r2);

enum class FrameStatus {
  ok,
  parallel,      // dr_1 = dr_2 (on the axis outside the segment), phi = 0
  antiparallel,  // dr_1 = -dr_2 (between collinear centers), phi = pi/2
};

struct TwoCenterFrame {
  double r1 = 0.0, r2 = 0.0;
  double phi = 0.0;  // in [0, pi/2]; cos phi = |dr1+dr2|/2, sin phi = |dr1-dr2|/2
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  Covector3 e1, e2, e3;  // right-handed; e3 = *(e1 ^ e2)
  FrameStatus status = FrameStatus::ok;
};

// Realize the frame at p for centers p1, p2. Degenerate directions are
// completed by a stable orthogonal choice and flagged in `status`.
TwoCenterFrame two_center_frame(const HPoint& p, const HPoint& p1, const HPoint& p2);

// The half-angle alone; total (phi = 0 / pi/2 at the degenerate loci).
double phi_at(const HPoint& p, const HPoint& p1, const HPoint& p2);

// The closed-form Q table:
//   Q11 = (alpha+1) sin^2 + beta cos^2,  Q22 = (alpha-beta) cos^2 - sin^2,
//   Q33 = (alpha+1) - (beta+1) cos^2,    Q44 = sin^2 + beta cos^2,
//   Q34 = gamma sin cos, all other off-diagonals zero.
Sym4 q_components(double r1, double r2, double phi);

struct MuCertificate {
  std::array<double, 4> mu{};  // eigenvalues of e^{-2f} V^{-1} Q, ascending
  double rescale = 0.0;        // 2 e^{r1+r2} / (coth r1 + coth r2)
  double mu13 = 0.0;           // mu1 + mu3
  double mu12 = 0.0;           // mu1 + mu2
  double bound = 0.0;          // 2 / (1 + e^{-(r1+r2)})
  double det_margin = 0.0;     // det({3,4} block - sin^2 phi Id) - (beta^2-gamma^2) sin^2 cos^2
  bool pass = false;           // mu13 > 1 and mu12 >= 0 (margin 1e-9)
};

MuCertificate mu_certificate(double r1, double r2, double phi);

}  // namespace sdcurv
