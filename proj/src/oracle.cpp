#include "sdcurv/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "sdcurv/curvature.hpp"

namespace sdcurv {

// ---------------------------------------------------------------- Mat4 ----

Mat4 Mat4::identity() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
  return m;
}
Mat4 Mat4::operator+(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
  return r;
}
Mat4 Mat4::operator-(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.a[i][j] = a[i][j] - o.a[i][j];
  return r;
}
Mat4 Mat4::operator*(double k) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.a[i][j] = k * a[i][j];
  return r;
}
double Mat4::max_abs() const {
  double v = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v = std::max(v, std::abs(a[i][j]));
  return v;
}

Mat4 inverse(const Mat4& m) {
  double w[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      w[i][j] = m.a[i][j];
      w[i][4 + j] = (i == j) ? 1.0 : 0.0;
    }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(w[r][col]) > std::abs(w[piv][col])) piv = r;
    if (std::abs(w[piv][col]) < 1e-300) throw std::runtime_error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < 8; ++j) std::swap(w[piv][j], w[col][j]);
    const double d = w[col][col];
    for (int j = 0; j < 8; ++j) w[col][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double factor = w[r][col];
      for (int j = 0; j < 8; ++j) w[r][j] -= factor * w[col][j];
    }
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.a[i][j] = w[i][4 + j];
  return out;
}

Mat4 cholesky_lower(const Mat4& m) {
  Mat4 L;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m.a[i][j];
      for (int k = 0; k < j; ++k) s -= L.a[i][k] * L.a[j][k];
      if (i == j) {
        if (!(s > 0.0)) throw std::runtime_error("cholesky: matrix not positive definite");
        L.a[i][i] = std::sqrt(s);
      } else {
        L.a[i][j] = s / L.a[j][j];
      }
    }
  }
  return L;
}

Mat4 matmul(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += x.a[i][k] * y.a[k][j];
      r.a[i][j] = s;
    }
  return r;
}

// ------------------------------------------------------ theta potential ----

ThetaPotential::ThetaPotential(double x0, double y0, std::vector<double> center_heights)
    : x0_(x0), y0_(y0), heights_(std::move(center_heights)) {}

double ThetaPotential::operator()(double rho, double z) const {
  double w = 0.0;
  for (double c : heights_) {
    if (rho < 1e-12) {
      w += 0.5 * ((z > c ? 1.0 : -1.0) - 1.0);
      continue;
    }
    // cos of the polar angle at the center, via the geodesic circle through
    // (rho, z) and (0, c) centered at (a, 0) on the boundary plane.
    const double a = (rho * rho + z * z - c * c) / (2.0 * rho);
    w += 0.5 * (a / std::hypot(a, c) - 1.0);
  }
  return w;
}

ThetaPotential theta_potential(const Configuration& cfg) {
  if (!cfg.axisymmetric())
    throw std::invalid_argument("theta_potential: centers must share one vertical axis");
  std::vector<double> heights;
  for (const HPoint& c : cfg.centers()) heights.push_back(c.z);
  const double x0 = cfg.n() > 0 ? cfg.centers().front().x : 0.0;
  const double y0 = cfg.n() > 0 ? cfg.centers().front().y : 0.0;
  return ThetaPotential(x0, y0, heights);
}

// ----------------------------------------------------------------- charts ----

ChartMetric fiber_chart(const Configuration& cfg) {
  const ThetaPotential w = theta_potential(cfg);
  ChartMetric m;
  m.name = "fiber";
  // (t, x, y, z) is the positive coordinate order for theta ^ v_h; the cyclic
  // shift to (x, y, z, t) is odd.
  m.orientation = -1;
  m.eval = [cfg, w](const Vec4& q) {
    const HPoint p{q[0], q[1], q[2]};
    const double dx = q[0] - w.axis_x(), dy = q[1] - w.axis_y();
    const double rho2 = dx * dx + dy * dy;
    const PotentialData pd = potential(cfg, p);
    const GaugeData gd = gauge(cfg, p);
    const double wv = w(std::sqrt(rho2), q[2]);
    const double A = std::exp(2.0 * gd.f) * pd.V / (q[2] * q[2]);
    const double B = std::exp(2.0 * gd.f) / pd.V;
    const Vec4 th{-wv * dy / rho2, wv * dx / rho2, 0.0, 1.0};
    Mat4 g;
    for (int i = 0; i < 3; ++i) g.a[i][i] = A;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g.a[i][j] += B * th[i] * th[j];
    return g;
  };
  const double ax = w.axis_x(), ay = w.axis_y();
  std::vector<HPoint> centers = cfg.centers();
  m.in_domain = [ax, ay, centers](const Vec4& q) {
    if (!(q[2] > 1e-6)) return false;
    const double dx = q[0] - ax, dy = q[1] - ay;
    if (dx * dx + dy * dy < 1e-8) return false;
    for (const HPoint& c : centers)
      if (dist({q[0], q[1], q[2]}, c) < 1e-3) return false;
    return true;
  };
  return m;
}

ChartMetric hopf_chart_n1(bool fubini_study) {
  ChartMetric m;
  m.name = fubini_study ? "hopf_fs" : "hopf_g0";
  m.orientation = 1;
  m.eval = [fubini_study](const Vec4& q) {
    const double r = q[0], th = q[1];
    const double V = 1.0 / (-std::expm1(-2.0 * r));
    const double e2f = fubini_study ? std::exp(-2.0 * r) : 1.0;
    const double sh = std::sinh(r), ct = std::cos(th), st = std::sin(th);
    Mat4 g;
    g.a[0][0] = e2f * V;
    g.a[1][1] = e2f * V * sh * sh;
    g.a[2][2] = e2f * (V * sh * sh * st * st + 0.25 * ct * ct / V);
    g.a[3][3] = e2f * 0.25 / V;
    g.a[2][3] = g.a[3][2] = e2f * 0.25 * ct / V;
    return g;
  };
  m.in_domain = [](const Vec4& q) {
    return q[0] > 1e-3 && q[1] > 0.05 && q[1] < M_PI - 0.05;
  };
  return m;
}

Mat4 fubini_study_reference(const Vec4& q) {
  const double r = q[0], th = q[1];
  const double cr = std::exp(-r);                     // cos(rho_fs)
  const double sr2 = -std::expm1(-2.0 * r);           // sin^2(rho_fs)
  const double drho_dr = cr / std::sqrt(sr2);
  const double ct = std::cos(th), st = std::sin(th);
  Mat4 g;
  g.a[0][0] = drho_dr * drho_dr;
  g.a[1][1] = 0.25 * sr2;
  g.a[2][2] = 0.25 * sr2 * (st * st + cr * cr * ct * ct);
  g.a[3][3] = 0.25 * sr2 * cr * cr;
  g.a[2][3] = g.a[3][2] = 0.25 * sr2 * cr * cr * ct;
  return g;
}

ChartMetric flat_chart() {
  ChartMetric m;
  m.name = "flat";
  m.orientation = 1;
  m.eval = [](const Vec4&) { return Mat4::identity(); };
  m.in_domain = [](const Vec4&) { return true; };
  return m;
}

ChartMetric flat_chart_curvilinear() {
  ChartMetric m;
  m.name = "flat_spherical";
  m.orientation = 1;
  // (u, v, w, s): Euclidean 3-space in spherical coordinates, plus a line.
  m.eval = [](const Vec4& q) {
    Mat4 g;
    const double u = q[0], v = q[1];
    g.a[0][0] = 1.0;
    g.a[1][1] = u * u;
    g.a[2][2] = u * u * std::sin(v) * std::sin(v);
    g.a[3][3] = 1.0;
    return g;
  };
  m.in_domain = [](const Vec4& q) { return q[0] > 0.2 && q[1] > 0.2 && q[1] < M_PI - 0.2; };
  return m;
}

// ------------------------------------------------------------ FD engine ----

namespace {

using Gamma = std::array<std::array<std::array<double, 4>, 4>, 4>;  // [lam][mu][nu]

Vec4 shifted(const Vec4& q, int mu, double h) {
  Vec4 r = q;
  r[mu] += h;
  return r;
}

Mat4 metric_d1(const ChartMetric& m, const Vec4& q, int mu, double h) {
  const Mat4 d = (m.eval(shifted(q, mu, h)) - m.eval(shifted(q, mu, -h))) * (0.5 / h);
  const Mat4 d2 =
      (m.eval(shifted(q, mu, 0.5 * h)) - m.eval(shifted(q, mu, -0.5 * h))) * (1.0 / h);
  return (d2 * 4.0 - d) * (1.0 / 3.0);
}

Gamma christoffel(const ChartMetric& m, const Vec4& q, double h) {
  const Mat4 gi = inverse(m.eval(q));
  Mat4 dg[4];
  for (int mu = 0; mu < 4; ++mu) dg[mu] = metric_d1(m, q, mu, h);
  Gamma G{};
  for (int lam = 0; lam < 4; ++lam)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu; nu < 4; ++nu) {
        double s = 0.0;
        for (int sig = 0; sig < 4; ++sig)
          s += gi.a[lam][sig] * (dg[mu].a[sig][nu] + dg[nu].a[sig][mu] - dg[sig].a[mu][nu]);
        G[lam][mu][nu] = G[lam][nu][mu] = 0.5 * s;
      }
  return G;
}

Gamma gamma_d1(const ChartMetric& m, const Vec4& q, int mu, double h) {
  const Gamma gp = christoffel(m, shifted(q, mu, h), h);
  const Gamma gm = christoffel(m, shifted(q, mu, -h), h);
  const Gamma gp2 = christoffel(m, shifted(q, mu, 0.5 * h), h);
  const Gamma gm2 = christoffel(m, shifted(q, mu, -0.5 * h), h);
  Gamma out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const double d = (gp[a][b][c] - gm[a][b][c]) / (2.0 * h);
        const double d2 = (gp2[a][b][c] - gm2[a][b][c]) / h;
        out[a][b][c] = (4.0 * d2 - d) / 3.0;
      }
  return out;
}

struct TetradWeyl {
  double w[4][4][4][4];  // tetrad components
  double plus_norm, minus_norm;
  double trace_residual;
};

}  // namespace

FDCurvature fd_curvature(const ChartMetric& m, const Vec4& p, double step) {
  if (m.in_domain && !m.in_domain(p))
    throw std::invalid_argument("fd_curvature: point outside chart domain");

  const Mat4 g = m.eval(p);
  const Mat4 gi = inverse(g);
  const Gamma G = christoffel(m, p, step);
  Gamma dG[4];
  for (int mu = 0; mu < 4; ++mu) dG[mu] = gamma_d1(m, p, mu, step);

  // R^rho_{sig mu nu} = d_mu Gam^rho_{nu sig} - d_nu Gam^rho_{mu sig}
  //                     + Gam^rho_{mu lam} Gam^lam_{nu sig}
  //                     - Gam^rho_{nu lam} Gam^lam_{mu sig}
  double Rup[4][4][4][4];
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double v = dG[mu][r][nu][s] - dG[nu][r][mu][s];
          for (int lam = 0; lam < 4; ++lam)
            v += G[r][mu][lam] * G[lam][nu][s] - G[r][nu][lam] * G[lam][mu][s];
          Rup[r][s][mu][nu] = v;
        }

  FDCurvature out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.0;
          for (int r = 0; r < 4; ++r) v += g.a[a][r] * Rup[r][b][c][d];
          out.riemann[a][b][c][d] = v;
        }

  for (int s = 0; s < 4; ++s)
    for (int nu = 0; nu < 4; ++nu) {
      double v = 0.0;
      for (int mu = 0; mu < 4; ++mu) v += Rup[mu][s][mu][nu];
      out.ricci.a[s][nu] = v;
    }
  // Symmetrize away the FD asymmetry.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double v = 0.5 * (out.ricci.a[i][j] + out.ricci.a[j][i]);
      out.ricci.a[i][j] = out.ricci.a[j][i] = v;
    }
  out.scalar = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.scalar += gi.a[i][j] * out.ricci.a[i][j];

  // Weyl, lowered coordinate components.
  double W[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = out.riemann[a][b][c][d];
          v -= 0.5 * (g.a[a][c] * out.ricci.a[b][d] - g.a[a][d] * out.ricci.a[b][c] +
                      g.a[b][d] * out.ricci.a[a][c] - g.a[b][c] * out.ricci.a[a][d]);
          v += (out.scalar / 6.0) * (g.a[a][c] * g.a[b][d] - g.a[a][d] * g.a[b][c]);
          W[a][b][c][d] = v;
        }

  // Tetrad components through the Cholesky coframe E^a_mu = (L^T)_{a mu};
  // frame vectors are the columns of (L^T)^{-1}.
  const Mat4 L = cholesky_lower(g);
  Mat4 Lt;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Lt.a[i][j] = L.a[j][i];
  const Mat4 N = inverse(Lt);

  double Wt[4][4][4][4];
  double Rt[4][4][4][4];
  double max_wt = 0.0, max_rt = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double vw = 0.0, vr = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                  const double basis = N.a[i][a] * N.a[j][b] * N.a[k][c] * N.a[l][d];
                  vw += W[i][j][k][l] * basis;
                  vr += out.riemann[i][j][k][l] * basis;
                }
          Wt[a][b][c][d] = vw;
          Rt[a][b][c][d] = vr;
          max_wt = std::max(max_wt, std::abs(vw));
          max_rt = std::max(max_rt, std::abs(vr));
        }

  double bianchi = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          bianchi = std::max(
              bianchi, std::abs(Rt[a][b][c][d] + Rt[a][c][d][b] + Rt[a][d][b][c]));
  out.bianchi_residual = bianchi / (1.0 + max_rt);

  double trace_resid = 0.0;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double tr = 0.0;
      for (int a = 0; a < 4; ++a) tr += Wt[a][b][a][d];
      trace_resid = std::max(trace_resid, std::abs(tr));
    }
  out.weyl_trace_residual = trace_resid / (1.0 + max_wt);

  // +/- split. With epsilon_{0123} = sigma in the tetrad, the (anti)self-dual
  // bivector pairs are (0i) +/- sigma (jk), (i,j,k) cyclic.
  const int comp[3][2] = {{2, 3}, {3, 1}, {1, 2}};
  const int sigma = m.orientation;
  double plus2 = 0.0, minus2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int p0 = 0, p1 = i + 1;
      const int q0 = 0, q1 = j + 1;
      const double a00 = Wt[p0][p1][q0][q1];
      const double a01 = Wt[p0][p1][comp[j][0]][comp[j][1]];
      const double a10 = Wt[comp[i][0]][comp[i][1]][q0][q1];
      const double a11 = Wt[comp[i][0]][comp[i][1]][comp[j][0]][comp[j][1]];
      const double wp = a00 + sigma * a01 + sigma * a10 + a11;
      const double wm = a00 - sigma * a01 - sigma * a10 + a11;
      plus2 += wp * wp;
      minus2 += wm * wm;
    }
  out.weyl_plus = std::sqrt(plus2);
  out.weyl_minus = std::sqrt(minus2);
  return out;
}

double selfduality_residual(const ChartMetric& m, const Vec4& p, double step,
                            bool flip_orientation) {
  ChartMetric mm = m;
  if (flip_orientation) mm.orientation = -m.orientation;
  const FDCurvature c = fd_curvature(mm, p, step);
  return c.weyl_minus / (c.weyl_plus + c.weyl_minus + 1e-300);
}

namespace {

double fd1_scalar(const std::function<double(const Vec4&)>& f, const Vec4& q, int mu, double h) {
  const double d = (f(shifted(q, mu, h)) - f(shifted(q, mu, -h))) / (2.0 * h);
  const double d2 = (f(shifted(q, mu, 0.5 * h)) - f(shifted(q, mu, -0.5 * h))) / h;
  return (4.0 * d2 - d) / 3.0;
}

double fd2_scalar(const std::function<double(const Vec4&)>& f, const Vec4& q, int mu, int nu,
                  double h) {
  if (mu == nu) {
    const double f0 = f(q);
    auto second = [&](double hh) {
      return (f(shifted(q, mu, hh)) - 2.0 * f0 + f(shifted(q, mu, -hh))) / (hh * hh);
    };
    return (16.0 * second(0.5 * h) - second(h)) / 15.0;
  }
  auto cross = [&](double hh) {
    return (f(shifted(shifted(q, mu, hh), nu, hh)) - f(shifted(shifted(q, mu, hh), nu, -hh)) -
            f(shifted(shifted(q, mu, -hh), nu, hh)) + f(shifted(shifted(q, mu, -hh), nu, -hh))) /
           (4.0 * hh * hh);
  };
  return (16.0 * cross(0.5 * h) - cross(h)) / 15.0;
}

Mat4 hessian_on_chart(const std::function<double(const Vec4&)>& f, const ChartMetric& g0,
                      const Vec4& p, double step, Vec4* df_out) {
  const Gamma G = christoffel(g0, p, step);
  Vec4 df;
  for (int mu = 0; mu < 4; ++mu) df[mu] = fd1_scalar(f, p, mu, step);
  Mat4 H;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      double v = fd2_scalar(f, p, mu, nu, step);
      for (int lam = 0; lam < 4; ++lam) v -= G[lam][mu][nu] * df[lam];
      H.a[mu][nu] = H.a[nu][mu] = v;
    }
  if (df_out) *df_out = df;
  return H;
}

}  // namespace

Mat4 conformal_rescale_ricci(const Mat4& ric0, const std::function<double(const Vec4&)>& f,
                             const ChartMetric& g0, const Vec4& p, double step) {
  Vec4 df;
  const Mat4 H = hessian_on_chart(f, g0, p, step, &df);
  const Mat4 g = g0.eval(p);
  const Mat4 gi = inverse(g);
  double df2 = 0.0, lap = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      df2 += gi.a[i][j] * df[i] * df[j];
      lap += gi.a[i][j] * H.a[i][j];
    }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.a[i][j] = ric0.a[i][j] - 2.0 * H.a[i][j] + 2.0 * df[i] * df[j] -
                    (lap + 2.0 * df2) * g.a[i][j];
  return out;
}

double chart_laplacian(const std::function<double(const Vec4&)>& f, const ChartMetric& g0,
                       const Vec4& p, double step) {
  Vec4 df;
  const Mat4 H = hessian_on_chart(f, g0, p, step, &df);
  const Mat4 gi = inverse(g0.eval(p));
  double lap = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) lap += gi.a[i][j] * H.a[i][j];
  return lap;
}

Mat4 ricci_chart_components(const Configuration& cfg, const Vec4& q) {
  const HPoint p{q[0], q[1], q[2]};
  const PotentialData pd = potential(cfg, p);
  const GaugeData gd = gauge(cfg, p);
  const Sym4 ric = ricci_frame(pd, gd);

  const ThetaPotential w = theta_potential(cfg);
  const double dx = q[0] - w.axis_x(), dy = q[1] - w.axis_y();
  const double rho2 = dx * dx + dy * dy;
  const double wv = w(std::sqrt(rho2), q[2]);

  // Adapted coframe in chart coordinates: E^i = dx_i / z, E^4 = theta / V.
  double E[4][4] = {};
  E[0][0] = 1.0 / q[2];
  E[1][1] = 1.0 / q[2];
  E[2][2] = 1.0 / q[2];
  E[3][0] = -wv * dy / rho2 / pd.V;
  E[3][1] = wv * dx / rho2 / pd.V;
  E[3][3] = 1.0 / pd.V;

  Mat4 out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) v += ric(a, b) * E[a][mu] * E[b][nu];
      out.a[mu][nu] = v;
    }
  return out;
}

Mat4 chart_metric_at(const ChartMetric& m, const Vec4& q) { return m.eval(q); }

}  // namespace sdcurv
