#include "sdcurv/fd3.hpp"

#include <array>

namespace sdcurv {

namespace {

HPoint shift(const HPoint& p, int axis, double h) {
  HPoint q = p;
  (axis == 0 ? q.x : axis == 1 ? q.y : q.z) += h;
  return q;
}

double d1(const ScalarField3& f, const HPoint& p, int axis, double h) {
  const double d  = (f(shift(p, axis, h)) - f(shift(p, axis, -h))) / (2.0 * h);
  const double d2 = (f(shift(p, axis, 0.5 * h)) - f(shift(p, axis, -0.5 * h))) / h;
  return (4.0 * d2 - d) / 3.0;
}

double d2_diag(const ScalarField3& f, const HPoint& p, int axis, double h) {
  const double f0 = f(p);
  auto second = [&](double hh) {
    return (f(shift(p, axis, hh)) - 2.0 * f0 + f(shift(p, axis, -hh))) / (hh * hh);
  };
  return (16.0 * second(0.5 * h) - second(h)) / 15.0;
}

double d2_mixed(const ScalarField3& f, const HPoint& p, int a, int b, double h) {
  auto cross = [&](double hh) {
    return (f(shift(shift(p, a, hh), b, hh)) - f(shift(shift(p, a, hh), b, -hh)) -
            f(shift(shift(p, a, -hh), b, hh)) + f(shift(shift(p, a, -hh), b, -hh))) /
           (4.0 * hh * hh);
  };
  return (16.0 * cross(0.5 * h) - cross(h)) / 15.0;
}

}  // namespace

Covector3 fd_frame_gradient(const ScalarField3& f, const HPoint& p, double h) {
  return {p.z * d1(f, p, 0, h), p.z * d1(f, p, 1, h), p.z * d1(f, p, 2, h)};
}

SymForm3 fd_frame_hessian(const ScalarField3& f, const HPoint& p, double h) {
  std::array<double, 3> df{d1(f, p, 0, h), d1(f, p, 1, h), d1(f, p, 2, h)};
  double dd[3][3];
  for (int i = 0; i < 3; ++i) dd[i][i] = d2_diag(f, p, i, h);
  dd[0][1] = dd[1][0] = d2_mixed(f, p, 0, 1, h);
  dd[0][2] = dd[2][0] = d2_mixed(f, p, 0, 2, h);
  dd[1][2] = dd[2][1] = d2_mixed(f, p, 1, 2, h);

  // Nonzero Christoffels of h = (dx^2+dy^2+dz^2)/z^2:
  //   Gamma^x_{xz} = Gamma^y_{yz} = Gamma^z_{zz} = -1/z,
  //   Gamma^z_{xx} = Gamma^z_{yy} = +1/z.
  const double iz = 1.0 / p.z;
  double hess[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) hess[i][j] = dd[i][j];
  hess[0][2] += iz * df[0];
  hess[2][0] += iz * df[0];
  hess[1][2] += iz * df[1];
  hess[2][1] += iz * df[1];
  hess[2][2] += iz * df[2];
  hess[0][0] -= iz * df[2];
  hess[1][1] -= iz * df[2];

  SymForm3 out;
  const double z2 = p.z * p.z;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) out.at(i, j) = z2 * 0.5 * (hess[i][j] + hess[j][i]);
  return out;
}

}  // namespace sdcurv
