#include "sdcurv/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace sdcurv {

namespace {

// Cyclic Jacobi on a small symmetric matrix.
template <int N>
void jacobi(double a[N][N], double v[N][N], double* vals) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;

  double scale = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(a[i][j]));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off <= 1e-13 * scale) break;

    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : 1.0 / (tau - std::sqrt(1.0 + tau * tau)));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < N; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < N; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < N; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  for (int i = 0; i < N; ++i) vals[i] = a[i][i];
}

}  // namespace

EigSym4 eig_sym4_full(const Sym4& t) {
  double a[4][4], v[4][4], vals[4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = t(i, j);
  jacobi<4>(a, v, vals);
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });
  EigSym4 out;
  for (int k = 0; k < 4; ++k) {
    out.vals[k] = vals[order[k]];
    for (int i = 0; i < 4; ++i) out.vecs[k][i] = v[i][order[k]];
  }
  return out;
}

std::array<double, 4> eig_sym4(const Sym4& t) { return eig_sym4_full(t).vals; }

std::array<double, 3> eig_sym3(const SymForm3& t) {
  double a[3][3], v[3][3], vals[3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = t(i, j);
  jacobi<3>(a, v, vals);
  std::array<double, 3> out{vals[0], vals[1], vals[2]};
  std::sort(out.begin(), out.end());
  return out;
}

Sym4 ricci_frame(const PotentialData& pd, const GaugeData& gd) {
  const double V = pd.V;
  const double df2 = norm2(gd.df);
  const double dVdf = dot(pd.dV, gd.df);

  const double hcoef = -2.0 - gd.lapf - 2.0 * df2 - dVdf / V;
  const SymForm3 block = hcoef * SymForm3::identity() - 2.0 * gd.Ddf +
                         2.0 * SymForm3::outer(gd.df) +
                         (2.0 / V) * SymForm3::sym_outer(pd.dV, gd.df);

  Sym4 ric;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) ric.at(i, j) = block(i, j);
  ric.at(3, 3) = -gd.lapf - 2.0 * df2 + dVdf / V;
  const Covector3 cross = star_wedge(pd.dV, gd.df);
  for (int i = 0; i < 3; ++i) ric.at(i, 3) = -cross[i] / V;
  return ric;
}

double scalar_curv(const PotentialData& pd, const GaugeData& gd) {
  return 6.0 * std::exp(-2.0 * gd.f) / pd.V * (-1.0 - gd.lapf - norm2(gd.df));
}

Sym4 schouten_q(const PotentialData& pd, const GaugeData& gd) {
  const Covector3 psi = (1.0 / pd.V) * pd.dV;
  const double df2 = norm2(gd.df);
  const double psidf = dot(psi, gd.df);

  const double hcoef = -1.0 - df2 - psidf;
  const SymForm3 block = hcoef * SymForm3::identity() - 2.0 * gd.Ddf +
                         2.0 * SymForm3::outer(gd.df) + 2.0 * SymForm3::sym_outer(psi, gd.df);

  Sym4 q;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) q.at(i, j) = block(i, j);
  q.at(3, 3) = 1.0 - df2 + psidf;
  const Covector3 cross = star_wedge(psi, gd.df);
  for (int i = 0; i < 3; ++i) q.at(i, 3) = -cross[i];
  return q;
}

Sym4 orthonormal_rescale(const Sym4& t, const PotentialData& pd, const GaugeData& gd) {
  return (std::exp(-2.0 * gd.f) / pd.V) * t;
}

double metric_coefficient(const PotentialData& pd, const GaugeData& gd) {
  return std::exp(2.0 * gd.f) * pd.V;
}

CurvatureReport classify(const Sym4& ric_prime, double s) {
  CurvatureReport rep;
  rep.ric_prime = ric_prime;
  rep.s = s;
  rep.eigs = eig_sym4(ric_prime);

  Sym4 qp = ric_prime;
  for (int i = 0; i < 4; ++i) qp.at(i, i) -= s / 6.0;
  rep.q_eigs = eig_sym4(qp);

  double ric0_sq = 0.0;
  for (double e : rep.eigs) ric0_sq += (e - s / 4.0) * (e - s / 4.0);

  rep.flags.positive_ricci = rep.eigs[0] > 0.0;
  rep.flags.strongly_positive = (s > 0.0) && (ric0_sq < s * s / 12.0);
  rep.flags.ric_operator_nonneg = rep.q_eigs[0] + rep.q_eigs[1] >= 0.0;
  rep.gb_integrand = s * s / 12.0 - ric0_sq;
  if (s != 0.0) {
    std::array<double, 4> lam;
    for (int i = 0; i < 4; ++i) lam[i] = rep.eigs[i] / s;
    rep.lambda = lam;
  }
  return rep;
}

CurvatureReport evaluate_report(const Configuration& cfg, const HPoint& p) {
  const PotentialData pd = potential(cfg, p);
  const GaugeData gd = gauge(cfg, p);
  const Sym4 ric = ricci_frame(pd, gd);
  const double s = scalar_curv(pd, gd);
  return classify(orthonormal_rescale(ric, pd, gd), s);
}

}  // namespace sdcurv
