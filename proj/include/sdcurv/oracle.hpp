#pragma once

#include <array>
#include <functional>
#include <string>

#include "sdcurv/ansatz.hpp"

// Independent verification path: explicit 4-dimensional chart metrics for the
// ansatz (connection form from an axisymmetric potential), curvature by
// nested central differences (Christoffel -> Riemann -> Ricci -> Weyl+/-),
// the conformal-rescaling law, and self-duality residuals.

namespace sdcurv {

using Vec4 = std::array<double, 4>;

struct Mat4 {
  double a[4][4] = {};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }
  static Mat4 identity();
  Mat4 operator+(const Mat4& o) const;
  Mat4 operator-(const Mat4& o) const;
  Mat4 operator*(double k) const;
  double max_abs() const;
};

Mat4 inverse(const Mat4& m);            // Gauss-Jordan with partial pivoting
Mat4 cholesky_lower(const Mat4& m);     // m = L L^T, throws if not SPD
Mat4 matmul(const Mat4& x, const Mat4& y);

// Chart metric: ten components as a function of 4 coordinates, a validity
// predicate, and the parity of the coordinate order against the orientation
// theta ^ v_h (+1 when the coordinate order is positively oriented).
struct ChartMetric {
  std::function<Mat4(const Vec4&)> eval;
  std::function<bool(const Vec4&)> in_domain;
  int orientation = 1;
  std::string name;
};

// Azimuthal potential w(rho, z) with theta = dt + w dphi and d theta = *dV,
// gauged so w = 0 on the axis above the topmost center. Each axis crossing of
// a center shifts w by one (the unit flux of the Green's function).
class ThetaPotential {
 public:
  ThetaPotential(double x0, double y0, std::vector<double> center_heights);

  double operator()(double rho, double z) const;
  double axis_x() const { return x0_; }
  double axis_y() const { return y0_; }

 private:
  double x0_, y0_;
  std::vector<double> heights_;
};

// Requires every center on one vertical geodesic.
ThetaPotential theta_potential(const Configuration& cfg);

// Coordinates (x, y, z, t), valid off the axis and away from the centers:
// g = e^{2f} (V h + V^{-1} (dt + w dphi)^2) with f from cfg's gauge.
ChartMetric fiber_chart(const Configuration& cfg);

// n = 1 chart in geodesic polar / Euler-angle coordinates (r, theta, phi, psi):
// g = e^{2f} { V [dr^2 + sinh^2 r (dtheta^2 + sin^2 theta dphi^2)]
//              + V^{-1} (dpsi + cos theta dphi)^2 / 4 },  V = 1/(1 - e^{-2r}),
// with f = -r when fubini_study, else f = 0.
ChartMetric hopf_chart_n1(bool fubini_study);

// Fubini-Study reference components in the same coordinates,
// d rho_fs^2 + sin^2 rho_fs (sigma1^2 + sigma2^2 + cos^2 rho_fs sigma3^2)
// with rho_fs = acos(e^{-r}).
Mat4 fubini_study_reference(const Vec4& q);

// Identity components (curvature must vanish).
ChartMetric flat_chart();
// Flat metric in curvilinear coordinates (nonzero Christoffels, zero
// curvature): Euclidean 3-space in spherical coordinates times a line.
ChartMetric flat_chart_curvilinear();

struct FDCurvature {
  Mat4 ricci;                      // coordinate components
  double scalar = 0.0;
  double riemann[4][4][4][4] = {};  // lowered coordinate components
  double weyl_plus = 0.0;           // Frobenius norms of the +/- blocks
  double weyl_minus = 0.0;          //   (orthonormal bivector basis)
  double bianchi_residual = 0.0;    // max |R_{a[bcd]}| / (1 + max |R|), tetrad
  double weyl_trace_residual = 0.0; // max |tr W| / (1 + max |W|), tetrad
};

// Central differences with one Richardson level at both derivative layers.
// p must be interior to the domain with margin >= 2*step.
FDCurvature fd_curvature(const ChartMetric& m, const Vec4& p, double step = 1e-3);

// Ric_g = Ric_{g0} - 2 grad df + 2 df (x) df - (lap f + 2 |df|^2) g0 for
// g = e^{2f} g0; the Hessian of f is taken by finite differences on g0.
Mat4 conformal_rescale_ricci(const Mat4& ric0, const std::function<double(const Vec4&)>& f,
                             const ChartMetric& g0, const Vec4& p, double step = 1e-3);

// The g0-Laplacian of f at p (for the Delta f = V^{-1} lap f cross-check).
double chart_laplacian(const std::function<double(const Vec4&)>& f, const ChartMetric& g0,
                       const Vec4& p, double step = 1e-3);

// |W-| / (|W+| + |W-|); near 0 for correctly oriented ansatz metrics,
// near 1 with the orientation flipped.
double selfduality_residual(const ChartMetric& m, const Vec4& p, double step = 1e-3,
                            bool flip_orientation = false);

// Closed-form Ricci (adapted-frame components) converted to fiber-chart
// coordinate components at p = (q[0], q[1], q[2]); independent of FD.
// p must be off the configuration's axis (dphi is singular there).
Mat4 ricci_chart_components(const Configuration& cfg, const Vec4& q);

// Metric of the fiber chart as a quadratic form, for Ricci = const * g tests.
Mat4 chart_metric_at(const ChartMetric& m, const Vec4& q);

}  // namespace sdcurv
