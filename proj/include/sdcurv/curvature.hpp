#pragma once

#include <array>
#include <optional>

#include "sdcurv/ansatz.hpp"

// Ricci tensor of g = e^{2f}(V h + V^{-1} theta^2), scalar curvature, the
// modified Ricci tensor Q = Ric - (s/6) g, and positivity classification.
//
// Sym4 components refer to the adapted frame {e^1, e^2, e^3, V^{-1} theta}
// (the e^i h-orthonormal); orthonormal_rescale converts to a g-orthonormal
// frame by the factor e^{-2f} V^{-1}.

namespace sdcurv {

struct Sym4 {
  std::array<double, 10> m{};  // 11,12,13,14,22,23,24,33,34,44

  static constexpr int idx(int i, int j) {
    if (i > j) { int t = i; i = j; j = t; }
    return i * (7 - i) / 2 + j;
  }
  double operator()(int i, int j) const { return m[idx(i, j)]; }
  double& at(int i, int j) { return m[idx(i, j)]; }

  static Sym4 zero() { return {}; }
  static Sym4 identity() {
    Sym4 s;
    s.at(0, 0) = s.at(1, 1) = s.at(2, 2) = s.at(3, 3) = 1.0;
    return s;
  }
  static Sym4 diag(double a, double b, double c, double d) {
    Sym4 s;
    s.at(0, 0) = a; s.at(1, 1) = b; s.at(2, 2) = c; s.at(3, 3) = d;
    return s;
  }

  Sym4 operator+(const Sym4& o) const {
    Sym4 s;
    for (int k = 0; k < 10; ++k) s.m[k] = m[k] + o.m[k];
    return s;
  }
  Sym4 operator-(const Sym4& o) const {
    Sym4 s;
    for (int k = 0; k < 10; ++k) s.m[k] = m[k] - o.m[k];
    return s;
  }
  Sym4 operator*(double k) const {
    Sym4 s;
    for (int q = 0; q < 10; ++q) s.m[q] = k * m[q];
    return s;
  }
  double trace() const { return m[0] + m[4] + m[7] + m[9]; }
  double max_abs() const {
    double v = 0.0;
    for (double x : m) v = std::max(v, std::abs(x));
    return v;
  }
};

inline Sym4 operator*(double k, const Sym4& s) { return s * k; }

struct EigSym4 {
  std::array<double, 4> vals;               // ascending
  std::array<std::array<double, 4>, 4> vecs;  // vecs[k] = unit eigenvector of vals[k]
};

// Eigenvalues by cyclic Jacobi iteration (tolerance 1e-13, max 50 sweeps).
std::array<double, 4> eig_sym4(const Sym4& t);
EigSym4 eig_sym4_full(const Sym4& t);
std::array<double, 3> eig_sym3(const SymForm3& t);

// Ricci of g in the adapted frame.
Sym4 ricci_frame(const PotentialData& pd, const GaugeData& gd);

// s_g = 6 e^{-2f} V^{-1} (-1 - lapf - |df|^2).
double scalar_curv(const PotentialData& pd, const GaugeData& gd);

// Q = Ric - (s/6) g, assembled directly from its own closed form
// (with psi = dV/V); agrees with ricci_frame - (s/6)*metric.
Sym4 schouten_q(const PotentialData& pd, const GaugeData& gd);

// Componentwise e^{-2f} V^{-1}: adapted-frame components -> g-orthonormal.
Sym4 orthonormal_rescale(const Sym4& t, const PotentialData& pd, const GaugeData& gd);

// Metric components of g in the adapted frame: e^{2f} V * Id.
double metric_coefficient(const PotentialData& pd, const GaugeData& gd);

struct CurvatureFlags {
  bool positive_ricci = false;
  bool strongly_positive = false;
  bool ric_operator_nonneg = false;
};

struct CurvatureReport {
  Sym4 ric_prime;                 // g-orthonormal components
  double s = 0.0;
  std::array<double, 4> eigs{};    // of ric_prime, ascending
  std::array<double, 4> q_eigs{};  // of ric_prime - (s/6) Id, ascending
  std::optional<std::array<double, 4>> lambda;  // eigs / s when s != 0
  CurvatureFlags flags;
  double gb_integrand = 0.0;  // s^2/12 - |Ric0|^2
};

// positive_ricci: min eig > 0; strongly_positive: s > 0 and |Ric0| < s/(2 sqrt 3);
// ric_operator_nonneg: mu1 + mu2 >= 0 for the Q' eigenvalues.
CurvatureReport classify(const Sym4& ric_prime, double s);

// Full pipeline at one point.
CurvatureReport evaluate_report(const Configuration& cfg, const HPoint& p);

}  // namespace sdcurv
