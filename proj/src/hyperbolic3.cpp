#include "sdcurv/hyperbolic3.hpp"

#include <stdexcept>

namespace sdcurv {

namespace {

void require_valid(const HPoint& p, const char* who) {
  if (!(p.z > 0.0)) throw std::invalid_argument(std::string(who) + ": point needs z > 0");
}

}  // namespace

double dist(const HPoint& p, const HPoint& q) {
  require_valid(p, "dist");
  require_valid(q, "dist");
  const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
  if (dx == 0.0 && dy == 0.0 && dz == 0.0) return 0.0;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  // cosh r = 1 + d^2/(2 z_p z_q)  <=>  sinh(r/2) = d / (2 sqrt(z_p z_q)),
  // which stays accurate for nearly coincident points.
  return 2.0 * std::asinh(0.5 * d / std::sqrt(p.z * q.z));
}

Covector3 dr_covector(const HPoint& p, const HPoint& center) {
  require_valid(p, "dr_covector");
  require_valid(center, "dr_covector");
  const double dx = p.x - center.x, dy = p.y - center.y, dz = p.z - center.z;
  const double d2 = dx * dx + dy * dy + dz * dz;
  if (d2 == 0.0) throw std::invalid_argument("dr_covector: direction undefined at the center");
  // u = cosh r; dr = du / |du| (|du|_h = sinh r).
  const double um1 = d2 / (2.0 * p.z * center.z);
  Covector3 du{p.z * dx / (p.z * center.z),
               p.z * dy / (p.z * center.z),
               p.z * (dz / (p.z * center.z) - um1 / p.z)};
  const double n = norm(du);
  if (!(n > 0.0)) throw std::invalid_argument("dr_covector: direction undefined at the center");
  return du * (1.0 / n);
}

SymForm3 hess_dist(const HPoint& p, const HPoint& center) {
  const double r = dist(p, center);
  if (r == 0.0) throw std::invalid_argument("hess_dist: undefined at the center");
  const Covector3 dr = dr_covector(p, center);
  return coth(r) * (SymForm3::identity() - SymForm3::outer(dr));
}

double green(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("green: needs r > 0");
  return 1.0 / std::expm1(2.0 * r);
}

double dgreen(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("dgreen: needs r > 0");
  const double sh = std::sinh(r);
  return -1.0 / (2.0 * sh * sh);
}

}  // namespace sdcurv
