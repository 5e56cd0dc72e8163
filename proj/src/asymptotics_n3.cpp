#include "sdcurv/asymptotics_n3.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdcurv/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdcurv {

namespace {

constexpr double kSineTol = 1e-10;

bool collinear3(const std::vector<HPoint>& c) {
  if (c.size() != 3) return false;
  const double d01 = dist(c[0], c[1]), d02 = dist(c[0], c[2]), d12 = dist(c[1], c[2]);
  const double longest = std::max({d01, d02, d12});
  return std::abs(d01 + d02 + d12 - 2.0 * longest) < 1e-9;
}

}  // namespace

OrbifoldRicci orbifold_ricci(int n, double r) {
  if (n < 1 || !(r > 0.0)) throw std::invalid_argument("orbifold_ricci: needs n >= 1, r > 0");
  const double cm1 = 2.0 / std::expm1(2.0 * r);  // coth r - 1
  const double c = 1.0 + cm1;
  const double pref = cm1 / (2.0 + n * cm1);
  const double zeta = pref * (4.0 + 3.0 * n * c - n);
  // eta = pref * (8 + 3nc - 5n); the gap form keeps zeta >= eta exact in
  // floating point (it is an equality at n = 1).
  return {zeta, zeta - pref * 4.0 * (n - 1)};
}

OrbifoldPositivity orbifold_positivity(int n) {
  if (n < 1) throw std::invalid_argument("orbifold_positivity: needs n >= 1");
  OrbifoldPositivity out;
  out.limit_eta_over_zeta = (8.0 - 2.0 * n) / (4.0 + 2.0 * n);

  // 8 + 3n c - 5n is linear increasing in c = coth r over (1, inf), with
  // infimum 8 - 2n at the r -> inf end. Negative somewhere iff n >= 5.
  out.positive_finite_r = (8 - 2 * n) >= 0;
  out.positive_everywhere = (8 - 2 * n) > 0;
  if (!out.positive_finite_r) {
    const double c_root = (5.0 * n - 8.0) / (3.0 * n);
    // coth r < c_root for r beyond atanh(1/c_root); pick a clear witness.
    const double r_root = std::atanh(1.0 / c_root);
    out.witness_r = 2.0 * r_root;
  }

  // Grid scan confirming the symbolic verdict.
  for (int k = 1; k <= 400; ++k) {
    const double r = 0.025 * k;
    const OrbifoldRicci v = orbifold_ricci(n, r);
    if (v.eta <= 0.0 && out.positive_finite_r)
      throw std::logic_error("orbifold_positivity: scan contradicts sign analysis");
    if (v.zeta < v.eta) throw std::logic_error("orbifold_positivity: zeta < eta");
  }
  return out;
}

ClusterFrameData make_cluster_frame(const std::array<double, 3>& r,
                                    const std::array<double, 3>& phi) {
  ClusterFrameData d;
  double sines = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (!(r[j] > 0.0)) throw std::invalid_argument("cluster frame: needs r_j > 0");
    sines += std::sin(phi[j]);
    d.kappa += std::cos(phi[j]);
  }
  if (std::abs(sines) > kSineTol)
    throw std::invalid_argument("cluster frame: sum sin phi_j != 0");
  d.r = r;
  d.phi = phi;
  return d;
}

ClusterRealization realize_cluster_frame(const Configuration& cfg, const HPoint& p) {
  if (cfg.n() != 3) throw std::invalid_argument("realize_cluster_frame: needs 3 centers");
  std::array<Covector3, 3> dr;
  std::array<double, 3> r;
  Covector3 sum;
  for (int j = 0; j < 3; ++j) {
    r[j] = dist(p, cfg.centers()[j]);
    dr[j] = dr_covector(p, cfg.centers()[j]);
    sum += dr[j];
  }
  const double ns = norm(sum);
  if (ns < 1e-12)
    throw std::invalid_argument("realize_cluster_frame: dr_1 + dr_2 + dr_3 = 0");
  ClusterRealization out;
  out.e1 = sum * (1.0 / ns);
  // In-plane complement of e1: take the largest residual among the dr_j.
  Covector3 best;
  double best_norm = 0.0;
  for (int j = 0; j < 3; ++j) {
    Covector3 resid = dr[j] - dot(dr[j], out.e1) * out.e1;
    if (norm(resid) > best_norm) {
      best_norm = norm(resid);
      best = resid;
    }
  }
  if (best_norm < 1e-14) {
    // All dr_j parallel to e1 (point on the axis): any orthogonal completion.
    Covector3 axis{1.0, 0.0, 0.0};
    if (std::abs(out.e1.c1) > 0.9) axis = {0.0, 1.0, 0.0};
    best = axis - dot(axis, out.e1) * out.e1;
    best_norm = norm(best);
  }
  out.e2 = best * (1.0 / best_norm);
  out.e3 = star_wedge(out.e1, out.e2);

  std::array<double, 3> phi;
  for (int j = 0; j < 3; ++j) phi[j] = std::atan2(dot(dr[j], out.e2), dot(dr[j], out.e1));
  out.data = make_cluster_frame(r, phi);
  return out;
}

Sym4 rhat(const ClusterFrameData& d) {
  std::array<double, 3> s, c, ir;
  for (int j = 0; j < 3; ++j) {
    s[j] = std::sin(d.phi[j]);
    c[j] = std::cos(d.phi[j]);
    ir[j] = 1.0 / d.r[j];
  }
  const double k = d.kappa;

  Sym4 R;
  for (int j = 0; j < 3; ++j) {
    const double w = ir[j] * ir[j];
    R.at(0, 0) += w * (2.0 + k * c[j] + 2.0 * s[j] * s[j]);
    R.at(1, 1) += w * (2.0 - k * c[j] + 2.0 * c[j] * c[j]);
    R.at(0, 1) += w * (k - 2.0 * c[j]) * s[j];
    R.at(2, 2) += w * (4.0 - k * c[j]);
    R.at(3, 3) += w * (2.0 + k * c[j]);
    R.at(2, 3) += w * k * s[j];
  }
  for (int j = 0; j < 3; ++j) {
    for (int l = j + 1; l < 3; ++l) {
      const double w = ir[j] * ir[l];
      R.at(0, 0) += 2.0 * w * (2.0 + s[j] * s[j] + s[l] * s[l]);
      R.at(1, 1) += 2.0 * w * (2.0 + c[j] * c[j] + c[l] * c[l]);
      R.at(0, 1) -= 2.0 * w * (c[j] * s[j] + c[l] * s[l]);
      R.at(2, 2) += 8.0 * w;
      R.at(3, 3) += 4.0 * w;
    }
  }
  return R;
}

BoundValues bound_functions(const std::array<double, 3>& phi, double theta) {
  double sines = 0.0;
  for (double f : phi) sines += std::sin(f);
  if (std::abs(sines) > kSineTol)
    throw std::invalid_argument("bound_functions: sum sin phi_j != 0");
  BoundValues out;
  for (int j = 0; j < 3; ++j) {
    double aj = 3.0, bj = 3.0;
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;
      aj += std::cos(phi[j] + phi[k] - 2.0 * theta);
      bj -= std::cos(phi[j] - phi[k] + 2.0 * theta);
    }
    out.a[j] = aj;
    out.b[j] = bj;
  }
  int q = 0;
  const double c2t = std::cos(theta) * std::cos(theta);
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k, ++q) {
      out.a_pairs[q] =
          6.0 - std::cos(2.0 * phi[j] - 2.0 * theta) - std::cos(2.0 * phi[k] - 2.0 * theta);
      out.b_pairs[q] = 4.0 + 4.0 * c2t;
    }
  return out;
}

BoundValues bound_functions_trig(const std::array<double, 3>& phi, double theta) {
  double kappa = 0.0, sines = 0.0;
  for (double f : phi) {
    kappa += std::cos(f);
    sines += std::sin(f);
  }
  if (std::abs(sines) > kSineTol)
    throw std::invalid_argument("bound_functions_trig: sum sin phi_j != 0");
  const double ct = std::cos(theta), st = std::sin(theta);
  BoundValues out;
  for (int j = 0; j < 3; ++j) {
    const double cj = std::cos(phi[j]), sj = std::sin(phi[j]);
    out.a[j] = ct * ct * (2.0 + kappa * cj + 2.0 * sj * sj) +
               st * st * (2.0 - kappa * cj + 2.0 * cj * cj) +
               2.0 * ct * st * (kappa - 2.0 * cj) * sj;
    out.b[j] = ct * ct * (4.0 - kappa * cj) + 2.0 * ct * st * kappa * sj +
               st * st * (2.0 + kappa * cj);
  }
  int q = 0;
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k, ++q) {
      const double cj = std::cos(phi[j]), sj = std::sin(phi[j]);
      const double ck = std::cos(phi[k]), sk = std::sin(phi[k]);
      out.a_pairs[q] = 2.0 * ct * ct * (2.0 + sj * sj + sk * sk) +
                       2.0 * st * st * (2.0 + cj * cj + ck * ck) -
                       4.0 * st * ct * (cj * sj + ck * sk);
      out.b_pairs[q] = 8.0 * ct * ct + 4.0 * st * st;
    }
  return out;
}

ClusterCertificate cluster_certificate(const Configuration& cfg, double epsilon, int samples,
                                       uint64_t seed, int threads) {
  if (!collinear3(cfg.centers()))
    throw std::invalid_argument("cluster_certificate: needs 3 collinear centers");
  if (!(epsilon > 0.0) || epsilon >= 0.5)
    throw std::invalid_argument("cluster_certificate: needs 0 < eps < 1/2");
  if (samples < 1) throw std::invalid_argument("cluster_certificate: needs samples >= 1");

  struct Row {
    double margin, min_eig, bound, sine;
    HPoint p;
  };
  std::vector<Row> rows(static_cast<size_t>(samples) * 3);

  auto kernel = [&](int i) {
    const int ball = i % 3;
    Rng rng = Rng::for_index(seed, static_cast<uint64_t>(i));
    const double rho = epsilon * std::exp(std::log(1e-3) * rng.uniform());
    const double mu = rng.uniform(-1.0, 1.0);
    const double ph = rng.uniform(0.0, 2.0 * M_PI);
    const HPoint p = hyperbolic_sphere_point(cfg.centers()[ball], rho, mu, ph);

    const ClusterRealization real = realize_cluster_frame(cfg, p);
    const Sym4 R = rhat(real.data);
    const double min_eig = eig_sym4(R)[0];
    const double inv_sum = 1.0 / real.data.r[0] + 1.0 / real.data.r[1] + 1.0 / real.data.r[2];
    const double V = potential(cfg, p).V;
    const double bound = std::max(inv_sum * inv_sum, V * V);
    double sines = 0.0;
    for (double f : real.data.phi) sines += std::sin(f);
    rows[i] = {(min_eig - bound) / bound, min_eig, bound, std::abs(sines), p};
  };

  const int total = samples * 3;
#ifdef _OPENMP
  if (threads != 1) {
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (int i = 0; i < total; ++i) kernel(i);
  } else {
    for (int i = 0; i < total; ++i) kernel(i);
  }
#else
  for (int i = 0; i < total; ++i) kernel(i);
#endif

  ClusterCertificate cert;
  cert.epsilon = epsilon;
  cert.samples = samples;
  cert.seed = seed;
  cert.min_eig_margin = rows[0].margin;
  cert.min_eig = rows[0].min_eig;
  cert.bound_at_min = rows[0].bound;
  cert.argmin = rows[0].p;
  for (const Row& r : rows) {
    cert.max_sine_residual = std::max(cert.max_sine_residual, r.sine);
    if (r.margin < cert.min_eig_margin) {
      cert.min_eig_margin = r.margin;
      cert.min_eig = r.min_eig;
      cert.bound_at_min = r.bound;
      cert.argmin = r.p;
    }
  }
  cert.passed = cert.min_eig_margin > 0.0;
  return cert;
}

}  // namespace sdcurv
