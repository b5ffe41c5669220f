// Test-only reference computations, kept independent of the library paths
// they check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dualdetect/decision_rules.hpp"
#include "dualdetect/signal_model.hpp"

namespace oracle {

inline double gaussian_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Composite Simpson rule of the standard normal density over [a, b].
inline double gaussian_integral(double a, double b, int intervals = 4000) {
  if (a == b) return 0.0;
  const double h = (b - a) / intervals;
  double sum = gaussian_density(a) + gaussian_density(b);
  for (int i = 1; i < intervals; ++i) {
    sum += gaussian_density(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

/// P(Z <= z) by quadrature from a far-left cutoff.
inline double quadrature_cdf(double z) {
  constexpr double left = -12.0;
  if (z <= left) return 0.0;
  return gaussian_integral(left, z, 20000);
}

/// Upper tail by quadrature to a far-right cutoff.
inline double quadrature_sf(double z) {
  constexpr double right = 12.0;
  if (z >= right) return 0.0;
  return gaussian_integral(z, right, 20000);
}

/// Threshold-ordering cases of the closed-form metrics, written out case by
/// case. Case 5 covers both gamma3 < gamma1 < gamma2 and gamma3 < gamma2 < gamma1.
/// Misplaced-detection terms condition on the stated hypothesis's own mean.
inline int ordering_case(const dualdetect::GammaThresholds& g) {
  if (g.gamma1 < g.gamma2 && g.gamma2 < g.gamma3) return 1;
  if (g.gamma1 < g.gamma3 && g.gamma3 < g.gamma2) return 2;
  if (g.gamma2 < g.gamma1 && g.gamma1 < g.gamma3) return 3;
  if (g.gamma2 < g.gamma3 && g.gamma3 < g.gamma1) return 4;
  return 5;
}

inline dualdetect::LocalMetrics case_table_metrics(const dualdetect::SignalModel& m,
                                                   const dualdetect::GammaThresholds& g) {
  const double m0 = m.m0(), m1 = m.m1(), m2 = m.m2();
  const double g1 = g.gamma1, g2 = g.gamma2, g3 = g.gamma3;
  dualdetect::LocalMetrics out;
  switch (ordering_case(g)) {
    case 1:
    case 3:
      out.p_d1 = gaussian_integral(g1 - m1, g3 - m1);
      out.p_d2 = quadrature_sf(g3 - m2);
      out.p_f1 = gaussian_integral(g1 - m0, g3 - m0);
      out.p_f2 = quadrature_sf(g3 - m0);
      out.p_m1 = quadrature_sf(g3 - m1);
      out.p_m2 = gaussian_integral(g1 - m2, g3 - m2);
      break;
    case 2:
      out.p_d1 = gaussian_integral(g1 - m1, g3 - m1);
      out.p_d2 = quadrature_sf(g2 - m2);
      out.p_f1 = gaussian_integral(g1 - m0, g3 - m0);
      out.p_f2 = quadrature_sf(g2 - m0);
      out.p_m1 = quadrature_sf(g2 - m1);
      out.p_m2 = gaussian_integral(g1 - m2, g3 - m2);
      break;
    case 4:
      out.p_d1 = 0.0;
      out.p_d2 = quadrature_sf(g3 - m2);
      out.p_f1 = 0.0;
      out.p_f2 = quadrature_sf(g3 - m0);
      out.p_m1 = quadrature_sf(g3 - m1);
      out.p_m2 = 0.0;
      break;
    default:
      out.p_d1 = 0.0;
      out.p_d2 = quadrature_sf(g2 - m2);
      out.p_f1 = 0.0;
      out.p_f2 = quadrature_sf(g2 - m0);
      out.p_m1 = quadrature_sf(g2 - m1);
      out.p_m2 = 0.0;
      break;
  }
  return out;
}

/// Random thresholds in a requested ordering case, spread around the means.
inline dualdetect::GammaThresholds gammas_in_case(int which, const dualdetect::SignalModel& m,
                                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(m.m0() - 2.0, m.m2() + 2.0);
  for (;;) {
    std::array<double, 3> v{u(rng), u(rng), u(rng)};
    std::sort(v.begin(), v.end());
    if (v[1] - v[0] < 1e-3 || v[2] - v[1] < 1e-3) continue;
    const double lo = v[0], mid = v[1], hi = v[2];
    switch (which) {
      case 1: return {lo, mid, hi};
      case 2: return {lo, hi, mid};
      case 3: return {mid, lo, hi};
      case 4: return {hi, lo, mid};
      case 5: return (rng() & 1) ? dualdetect::GammaThresholds{mid, hi, lo}
                                 : dualdetect::GammaThresholds{hi, mid, lo};
      default: return {lo, mid, hi};
    }
  }
}

/// Uniform point on each of the three two-simplices of a LocalMetrics.
inline dualdetect::LocalMetrics random_metrics(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  const auto pair = [&] {
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = a + b + c;
    return std::array<double, 2>{a / s, b / s};
  };
  dualdetect::LocalMetrics m;
  auto d1 = pair(), d2 = pair(), f = pair();
  m.p_d1 = d1[0];
  m.p_m1 = d1[1];
  m.p_d2 = d2[0];
  m.p_m2 = d2[1];
  m.p_f1 = f[0];
  m.p_f2 = f[1];
  return m;
}

/// Brute-force P(at least k of n votes equal +1) over all 3^n vote vectors with
/// per-vote probabilities {P(0), P(+1), P(-1)}.
inline double brute_force_quorum(const std::array<double, 3>& p, int n, int k) {
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  for (;;) {
    double prob = 1.0;
    int hits = 0;
    for (int d : digits) {
      prob *= p[static_cast<std::size_t>(d)];
      hits += d == 1;
    }
    if (hits >= k) total += prob;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == 3) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return total;
}

}  // namespace oracle
