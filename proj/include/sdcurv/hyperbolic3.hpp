#pragma once

#include <array>
#include <cmath>

// Exact pointwise geometry of hyperbolic 3-space in the upper-half-space
// model: h = (dx^2 + dy^2 + dz^2) / z^2 on {z > 0}.
//
// All covector and bilinear-form components are taken in the fixed
// h-orthonormal coframe {dx/z, dy/z, dz/z}; orientation is
// v_h = (dx ^ dy ^ dz) / z^3.

namespace sdcurv {

struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;  // z > 0
};

// 1-form at a point, components (c1, c2, c3) in {dx/z, dy/z, dz/z}.
struct Covector3 {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  Covector3 operator+(const Covector3& o) const { return {c1 + o.c1, c2 + o.c2, c3 + o.c3}; }
  Covector3 operator-(const Covector3& o) const { return {c1 - o.c1, c2 - o.c2, c3 - o.c3}; }
  Covector3 operator-() const { return {-c1, -c2, -c3}; }
  Covector3 operator*(double k) const { return {k * c1, k * c2, k * c3}; }
  Covector3& operator+=(const Covector3& o) {
    c1 += o.c1; c2 += o.c2; c3 += o.c3;
    return *this;
  }

  double operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
};

inline Covector3 operator*(double k, const Covector3& a) { return a * k; }

inline double dot(const Covector3& a, const Covector3& b) {
  return a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3;
}
inline double norm2(const Covector3& a) { return dot(a, a); }
inline double norm(const Covector3& a) { return std::sqrt(norm2(a)); }

// Symmetric bilinear form, six components m_ij (i <= j) in the same coframe.
struct SymForm3 {
  std::array<double, 6> m{};  // 11,12,13,22,23,33

  static constexpr int idx(int i, int j) {
    if (i > j) { int t = i; i = j; j = t; }
    return i * (5 - i) / 2 + j;
  }
  double operator()(int i, int j) const { return m[idx(i, j)]; }
  double& at(int i, int j) { return m[idx(i, j)]; }

  static SymForm3 zero() { return {}; }
  static SymForm3 identity() {
    SymForm3 s;
    s.m = {1, 0, 0, 1, 0, 1};
    return s;
  }
  // a (x) a
  static SymForm3 outer(const Covector3& a) {
    SymForm3 s;
    s.m = {a.c1 * a.c1, a.c1 * a.c2, a.c1 * a.c3, a.c2 * a.c2, a.c2 * a.c3, a.c3 * a.c3};
    return s;
  }
  // a (.) b = (a(x)b + b(x)a)/2
  static SymForm3 sym_outer(const Covector3& a, const Covector3& b) {
    SymForm3 s;
    s.m = {a.c1 * b.c1,
           0.5 * (a.c1 * b.c2 + a.c2 * b.c1),
           0.5 * (a.c1 * b.c3 + a.c3 * b.c1),
           a.c2 * b.c2,
           0.5 * (a.c2 * b.c3 + a.c3 * b.c2),
           a.c3 * b.c3};
    return s;
  }

  SymForm3 operator+(const SymForm3& o) const {
    SymForm3 s;
    for (int k = 0; k < 6; ++k) s.m[k] = m[k] + o.m[k];
    return s;
  }
  SymForm3 operator-(const SymForm3& o) const {
    SymForm3 s;
    for (int k = 0; k < 6; ++k) s.m[k] = m[k] - o.m[k];
    return s;
  }
  SymForm3 operator*(double k) const {
    SymForm3 s;
    for (int q = 0; q < 6; ++q) s.m[q] = k * m[q];
    return s;
  }
  SymForm3& operator+=(const SymForm3& o) {
    for (int k = 0; k < 6; ++k) m[k] += o.m[k];
    return *this;
  }

  double trace() const { return m[0] + m[3] + m[5]; }

  // Contraction with (the dual vector of) a unit covector: (m v)_i.
  Covector3 apply(const Covector3& v) const {
    return {(*this)(0, 0) * v.c1 + (*this)(0, 1) * v.c2 + (*this)(0, 2) * v.c3,
            (*this)(0, 1) * v.c1 + (*this)(1, 1) * v.c2 + (*this)(1, 2) * v.c3,
            (*this)(0, 2) * v.c1 + (*this)(1, 2) * v.c2 + (*this)(2, 2) * v.c3};
  }
};

inline SymForm3 operator*(double k, const SymForm3& s) { return s * k; }

// Hyperbolic distance; exact 0 for coincident points, stable for near ones.
double dist(const HPoint& p, const HPoint& q);

// Unit covector dr of the distance function from `center`, at p.
// Points away from the center along the geodesic. Error if p == center.
Covector3 dr_covector(const HPoint& p, const HPoint& center);

// Covariant Hessian of the distance function: coth(r) (h - dr (x) dr).
// Eigenvalues {coth r, coth r, 0}; the kernel is the radial direction.
SymForm3 hess_dist(const HPoint& p, const HPoint& center);

// Hodge star of a wedge of 1-forms with the v_h orientation:
// *(a ^ b) = cross product of frame components.
inline Covector3 star_wedge(const Covector3& a, const Covector3& b) {
  return {a.c2 * b.c3 - a.c3 * b.c2, a.c3 * b.c1 - a.c1 * b.c3, a.c1 * b.c2 - a.c2 * b.c1};
}

// Green's function G(r) = (coth r - 1)/2 = 1/expm1(2r), normalized so that
// d*dG = -2*pi*delta. Strictly decreasing, G -> 0 at infinity.
double green(double r);
// dG/dr = -1 / (2 sinh^2 r).
double dgreen(double r);

// coth computed through expm1; accurate for large r.
inline double coth(double r) { return 1.0 + 2.0 / std::expm1(2.0 * r); }

// The geodesic sphere of hyperbolic radius r about c is the Euclidean sphere
// with center (c.x, c.y, c.z cosh r) and radius c.z sinh r. Returns the point
// at polar direction (mu = cos of Euclidean polar angle, phi azimuthal).
inline HPoint hyperbolic_sphere_point(const HPoint& c, double r, double mu, double phi) {
  const double re = c.z * std::sinh(r);
  const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  return {c.x + re * st * std::cos(phi), c.y + re * st * std::sin(phi),
          c.z * std::cosh(r) + re * mu};
}

}  // namespace sdcurv
