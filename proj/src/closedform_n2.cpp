#include "sdcurv/closedform_n2.hpp"

#include <cmath>
#include <stdexcept>

namespace sdcurv {

namespace {

constexpr double kDegenerate = 1e-12;

// Unit covector orthogonal to u, chosen against the least-aligned axis.
Covector3 stable_orthogonal(const Covector3& u) {
  Covector3 axis{1.0, 0.0, 0.0};
  double a1 = std::abs(u.c1), a2 = std::abs(u.c2), a3 = std::abs(u.c3);
  if (a2 <= a1 && a2 <= a3) axis = {0.0, 1.0, 0.0};
  else if (a3 <= a1 && a3 <= a2) axis = {0.0, 0.0, 1.0};
  Covector3 v = axis - dot(axis, u) * u;
  return v * (1.0 / norm(v));
}

}  // namespace

Abg abg(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("abg: needs r1, r2 > 0");
  // Through g_i = coth r_i - 1 = 2/expm1(2 r_i); coth^2 - 1 = g(g+2) avoids
  // the cancellation that would flatten the strict chain alpha > beta > |gamma|
  // at large radii.
  const double g1 = 2.0 / std::expm1(2.0 * r1);
  const double g2 = 2.0 / std::expm1(2.0 * r2);
  return {g1 + g2, (g1 * (g1 + 2.0) + g2 * (g2 + 2.0)) / (g1 + g2 + 2.0), g1 - g2};
}

TwoCenterFrame two_center_frame(const HPoint& p, const HPoint& p1, const HPoint& p2) {
  TwoCenterFrame fr;
  fr.r1 = dist(p, p1);
  fr.r2 = dist(p, p2);
  const Covector3 dr1 = dr_covector(p, p1);
  const Covector3 dr2 = dr_covector(p, p2);
  const Covector3 sum = dr1 + dr2;
  const Covector3 dif = dr1 - dr2;
  const double cosphi = 0.5 * norm(sum);
  const double sinphi = 0.5 * norm(dif);
  fr.phi = std::atan2(sinphi, cosphi);

  const Abg v = abg(fr.r1, fr.r2);
  fr.alpha = v.alpha;
  fr.beta = v.beta;
  fr.gamma = v.gamma;

  if (cosphi < kDegenerate) {
    fr.status = FrameStatus::antiparallel;
    fr.e2 = dif * (1.0 / norm(dif));
    fr.e1 = stable_orthogonal(fr.e2);
  } else if (sinphi < kDegenerate) {
    fr.status = FrameStatus::parallel;
    fr.e1 = sum * (1.0 / norm(sum));
    fr.e2 = stable_orthogonal(fr.e1);
  } else {
    fr.e1 = sum * (1.0 / norm(sum));
    fr.e2 = dif * (1.0 / norm(dif));
  }
  fr.e3 = star_wedge(fr.e1, fr.e2);
  return fr;
}

double phi_at(const HPoint& p, const HPoint& p1, const HPoint& p2) {
  const Covector3 dr1 = dr_covector(p, p1);
  const Covector3 dr2 = dr_covector(p, p2);
  return std::atan2(0.5 * norm(dr1 - dr2), 0.5 * norm(dr1 + dr2));
}

Sym4 q_components(double r1, double r2, double phi) {
  if (!(phi >= 0.0) || !(phi <= M_PI_2 + 1e-12))
    throw std::invalid_argument("q_components: phi outside [0, pi/2]");
  const Abg v = abg(r1, r2);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double sp2 = sp * sp, cp2 = cp * cp;
  Sym4 q;
  q.at(0, 0) = (v.alpha + 1.0) * sp2 + v.beta * cp2;
  q.at(1, 1) = (v.alpha - v.beta) * cp2 - sp2;
  q.at(2, 2) = (v.alpha + 1.0) - (v.beta + 1.0) * cp2;
  q.at(3, 3) = sp2 + v.beta * cp2;
  q.at(2, 3) = v.gamma * sp * cp;
  return q;
}

MuCertificate mu_certificate(double r1, double r2, double phi) {
  const Abg v = abg(r1, r2);
  const Sym4 q = q_components(r1, r2, phi);
  MuCertificate cert;
  cert.rescale = 2.0 * std::exp(r1 + r2) / (coth(r1) + coth(r2));
  cert.mu = eig_sym4(cert.rescale * q);
  cert.mu13 = cert.mu[0] + cert.mu[2];
  cert.mu12 = cert.mu[0] + cert.mu[1];
  cert.bound = 2.0 / (1.0 + std::exp(-(r1 + r2)));

  const double sp2 = std::sin(phi) * std::sin(phi);
  const double cp2 = std::cos(phi) * std::cos(phi);
  const double det = (q(2, 2) - sp2) * (q(3, 3) - sp2) - q(2, 3) * q(2, 3);
  cert.det_margin = det - (v.beta * v.beta - v.gamma * v.gamma) * sp2 * cp2;

  constexpr double kTol = 1e-9;
  cert.pass = cert.mu13 > 1.0 - kTol && cert.mu12 >= -kTol && cert.det_margin > -kTol;
  return cert;
}

}  // namespace sdcurv
