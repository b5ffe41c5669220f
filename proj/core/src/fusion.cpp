#include "dualdetect/fusion.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dualdetect {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
    throw std::overflow_error("multinomial coefficient exceeds 64 bits");
  }
  return a * b;
}

std::uint64_t checked_binomial(int n, int r) {
  if (r > n - r) r = n - r;
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (n - r + i) is divisible by i; cancel the gcd first so the
    // intermediate never exceeds the final value's magnitude.
    const auto num = static_cast<std::uint64_t>(n - r + i);
    const auto den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(result, den);
    result = checked_mul(result / g, num / (den / g));
  }
  return result;
}

double binomial(int n, int r) noexcept {
  if (r > n - r) r = n - r;
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

double ipow(double base, int exp) noexcept {
  double result = 1.0;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

}  // namespace

FusionParams::FusionParams(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw std::invalid_argument("neighbourhood size n must be >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("vote threshold k must satisfy 1 <= k <= n");
}

std::uint64_t multinomial_coeff(int n, int x, int y) {
  if (n < 0 || x < 0 || y < 0 || x + y > n) {
    throw std::invalid_argument("multinomial_coeff requires 0 <= x, 0 <= y, x + y <= n (got n=" +
                                std::to_string(n) + ", x=" + std::to_string(x) +
                                ", y=" + std::to_string(y) + ")");
  }
  return checked_mul(checked_binomial(n, x), checked_binomial(n - x, y));
}

double trinomial_quorum(double hit, double other, int n, int k) noexcept {
  const double rest = 1.0 - hit - other;
  double total = 0.0;
  for (int i = k; i <= n; ++i) {
    const double c_i = binomial(n, i);
    const double hit_term = ipow(hit, i);
    for (int j = 0; j <= n - i; ++j) {
      total += c_i * binomial(n - i, j) * hit_term * ipow(other, j) * ipow(rest, n - i - j);
    }
  }
  return total;
}

FusionQuality fusion_quality(const LocalMetrics& m, const FusionParams& params) noexcept {
  const int n = params.n();
  const int k = params.k();
  FusionQuality q;
  q.q_d1 = trinomial_quorum(m.p_d1, m.p_m1, n, k);
  q.q_d2 = trinomial_quorum(m.p_d2, m.p_m2, n, k);
  q.q_f1 = trinomial_quorum(m.p_f1, m.p_f2, n, k);
  q.q_f2 = trinomial_quorum(m.p_f2, m.p_f1, n, k);
  q.q_f = q.q_f1 + q.q_f2;
  return q;
}

std::array<double, 3> decision_distribution(const LocalMetrics& m, Hypothesis truth) noexcept {
  double e1 = 0.0;
  double e2 = 0.0;
  switch (truth) {
    case Hypothesis::Normal: e1 = m.p_f1; e2 = m.p_f2; break;
    case Hypothesis::Event1: e1 = m.p_d1; e2 = m.p_m1; break;
    case Hypothesis::Event2: e1 = m.p_m2; e2 = m.p_d2; break;
  }
  return {1.0 - e1 - e2, e1, e2};
}

FusionOutcome enumerate_fusion_oracle(const LocalMetrics& metrics, const FusionParams& params,
                                      Hypothesis conditioning) {
  const int n = params.n();
  const int k = params.k();
  if (n > kMaxOracleNeighbourhood) {
    throw std::invalid_argument("enumeration oracle supports n <= " +
                                std::to_string(kMaxOracleNeighbourhood));
  }
  const auto dist = decision_distribution(metrics, conditioning);

  std::size_t vectors = 1;
  for (int i = 0; i < n; ++i) vectors *= 3;

  FusionOutcome out;
  for (std::size_t code = 0; code < vectors; ++code) {
    std::size_t rest = code;
    double probability = 1.0;
    int positives = 0;
    int negatives = 0;
    for (int sensor = 0; sensor < n; ++sensor) {
      const auto digit = rest % 3;  // 0 Normal, 1 Event1, 2 Event2
      rest /= 3;
      probability *= dist[digit];
      positives += digit == 1;
      negatives += digit == 2;
    }
    out.final_decision[index_of(apply_k_out_of_n(positives, negatives, k))] += probability;
    if (positives >= k) out.quorum_event1 += probability;
    if (negatives >= k) out.quorum_event2 += probability;
  }
  return out;
}

FusionQuality oracle_fusion_quality(const LocalMetrics& metrics, const FusionParams& params) {
  const auto at_e1 = enumerate_fusion_oracle(metrics, params, Hypothesis::Event1);
  const auto at_e2 = enumerate_fusion_oracle(metrics, params, Hypothesis::Event2);
  const auto at_normal = enumerate_fusion_oracle(metrics, params, Hypothesis::Normal);
  FusionQuality q;
  q.q_d1 = at_e1.final_decision[index_of(Hypothesis::Event1)];
  q.q_d2 = at_e2.final_decision[index_of(Hypothesis::Event2)];
  q.q_f1 = at_normal.final_decision[index_of(Hypothesis::Event1)];
  q.q_f2 = at_normal.final_decision[index_of(Hypothesis::Event2)];
  q.q_f = q.q_f1 + q.q_f2;
  return q;
}

double prob_error(const Priors& priors, const FusionQuality& quality) noexcept {
  return priors.q0() * quality.q_f + priors.q1() * (1.0 - quality.q_d1) +
         priors.q2() * (1.0 - quality.q_d2);
}

double prob_error(const SignalModel& model, const Priors& priors, const LambdaThresholds& lambdas,
                  const FusionParams& params) {
  const auto metrics = local_metrics(model, gammas_from_lambdas(model, lambdas));
  return prob_error(priors, fusion_quality(metrics, params));
}

}  // namespace dualdetect
