#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "sdcurv/curvature.hpp"
#include "sdcurv/hyperbolic3.hpp"
#include "sdcurv/rng.hpp"

// Shared test oracles: quadrature over geodesic spheres, Gauss-Legendre
// nodes, and frame rotations for comparing Sym4 components across frames.

namespace sdcurv::testutil {

inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    out[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return out;
}

inline double det3(const Covector3& a, const Covector3& b, const Covector3& c) {
  return a.c1 * (b.c2 * c.c3 - b.c3 * c.c2) - a.c2 * (b.c1 * c.c3 - b.c3 * c.c1) +
         a.c3 * (b.c1 * c.c2 - b.c2 * c.c1);
}

// Point at geodesic polar coordinates (r, theta = acos(m), phi) about a
// center, computed along the geodesic circle in the vertical plane at
// azimuth phi. Exact: dist(result, center) == r for every m in (-1, 1).
inline HPoint polar_sphere_point(const HPoint& c, double r, double m, double phi) {
  const double th = std::acos(m);
  const double t1 = 2.0 * std::atan(std::exp(-r) / std::tan(0.5 * th));
  const double rho = c.z * (std::cos(th) + std::cos(t1)) / std::sin(th);
  return {c.x + rho * std::cos(phi), c.y + rho * std::sin(phi),
          c.z * std::sin(t1) / std::sin(th)};
}

// Flux of *omega through the geodesic sphere of radius r about `center`,
// outward orientation; omega returns frame components of a 1-form. Geodesic
// polar parametrization keeps the integrand uniformly smooth, so the
// Gauss-Legendre x trapezoid rule converges spectrally at every radius.
inline double flux_star(const std::function<Covector3(const HPoint&)>& omega,
                        const HPoint& center, double r, int nmu = 32, int nphi = 64) {
  const auto gl = gauss_legendre(nmu);
  const double sh2 = std::sinh(r) * std::sinh(r);
  double total = 0.0;
  for (const auto& [m, wm] : gl) {
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * M_PI * (k + 0.5) / nphi;
      const HPoint q = polar_sphere_point(center, r, m, phi);
      const Covector3 dr = dr_covector(q, center);
      const Covector3 ephi{-std::sin(phi), std::cos(phi), 0.0};
      const Covector3 eth = star_wedge(ephi, dr);
      total += wm * (2.0 * M_PI / nphi) * sh2 * det3(omega(q), eth, ephi);
    }
  }
  return total;
}

// Components of a global-frame Sym4 in the frame {e1, e2, e3, e4}.
inline Sym4 rotate_to_frame(const Sym4& t, const Covector3& e1, const Covector3& e2,
                            const Covector3& e3) {
  const Covector3 e[3] = {e1, e2, e3};
  auto row = [&](int a, int i) { return a < 3 ? e[a][i] : 0.0; };
  Sym4 out;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v += row(a, i) * row(b, j) * t(i, j);
      if (a == 3 && b == 3) v = t(3, 3);
      if (b == 3 && a < 3) {
        v = 0.0;
        for (int i = 0; i < 3; ++i) v += row(a, i) * t(i, 3);
      }
      out.at(a, b) = v;
    }
  return out;
}

inline HPoint random_point(Rng& rng, double zlo = 0.5, double zhi = 2.5) {
  return {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(zlo, zhi)};
}

inline double max_abs_diff(const Sym4& a, const Sym4& b) {
  double v = 0.0;
  for (int k = 0; k < 10; ++k) v = std::max(v, std::abs(a.m[k] - b.m[k]));
  return v;
}

}  // namespace sdcurv::testutil
