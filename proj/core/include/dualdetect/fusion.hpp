// Second-layer (neighbourhood) fusion: the modified k-out-of-n rule, its
// closed-form trinomial quality probabilities, an exhaustive enumeration
// oracle, and the Bayesian error objective.
#pragma once

#include <array>
#include <cstdint>

#include "dualdetect/decision_rules.hpp"
#include "dualdetect/signal_model.hpp"

namespace dualdetect {

/// Neighbourhood size n and vote threshold k, 1 <= k <= n.
class FusionParams {
 public:
  FusionParams(int n, int k);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int k() const noexcept { return k_; }

  /// When 2k <= n both events can reach quorum in one vote vector. The
  /// closed forms then overlap and q_f1 + q_f2 overstates the false-alarm rate.
  [[nodiscard]] bool dual_quorum_possible() const noexcept { return 2 * k_ <= n_; }

  friend bool operator==(const FusionParams&, const FusionParams&) = default;

 private:
  int n_;
  int k_;
};

struct FusionQuality {
  double q_d1 = 0.0;
  double q_d2 = 0.0;
  double q_f1 = 0.0;
  double q_f2 = 0.0;
  double q_f = 0.0;  ///< q_f1 + q_f2
};

/// Final decision from the neighbourhood's vote counts: Event1 if at least k
/// report +1, Event2 if at least k report -1. If both reach quorum the larger
/// count wins and a tie gives Normal.
[[nodiscard]] constexpr Hypothesis apply_k_out_of_n(int positives, int negatives,
                                                    int k) noexcept {
  const bool e1 = positives >= k;
  const bool e2 = negatives >= k;
  if (e1 && e2) {
    if (positives > negatives) return Hypothesis::Event1;
    if (negatives > positives) return Hypothesis::Event2;
    return Hypothesis::Normal;
  }
  if (e1) return Hypothesis::Event1;
  if (e2) return Hypothesis::Event2;
  return Hypothesis::Normal;
}

/// n! / (x! y! (n-x-y)!). Throws std::invalid_argument on negative arguments or
/// x + y > n, std::overflow_error when the result does not fit in 64 bits.
[[nodiscard]] std::uint64_t multinomial_coeff(int n, int x, int y);

/// Probability that at least k of n i.i.d. ternary votes land on the outcome
/// with probability `hit`, where `other` is the probability of the third
/// non-zero outcome: sum_{i=k..n} sum_{j=0..n-i} C(n; i, j) hit^i other^j rest^(n-i-j).
[[nodiscard]] double trinomial_quorum(double hit, double other, int n, int k) noexcept;

[[nodiscard]] FusionQuality fusion_quality(const LocalMetrics& metrics,
                                           const FusionParams& params) noexcept;

/// Per-sensor decision distribution under a true hypothesis, indexed by
/// index_of(Hypothesis).
[[nodiscard]] std::array<double, 3> decision_distribution(const LocalMetrics& metrics,
                                                          Hypothesis truth) noexcept;

/// Exact outcome probabilities of one node's fusion under a hypothesis.
struct FusionOutcome {
  /// P(final decision = h), indexed by index_of(h). Conflicts resolved as in
  /// apply_k_out_of_n.
  std::array<double, 3> final_decision{};
  /// P(at least k votes of +1) and P(at least k votes of -1), counted
  /// independently of each other.
  double quorum_event1 = 0.0;
  double quorum_event2 = 0.0;
};

inline constexpr int kMaxOracleNeighbourhood = 12;

/// Enumerates all 3^n local decision vectors. Throws std::invalid_argument
/// when n > kMaxOracleNeighbourhood.
[[nodiscard]] FusionOutcome enumerate_fusion_oracle(const LocalMetrics& metrics,
                                                    const FusionParams& params,
                                                    Hypothesis conditioning);

/// FusionQuality assembled from the enumeration's final decisions. Equal to
/// fusion_quality whenever 2k > n.
[[nodiscard]] FusionQuality oracle_fusion_quality(const LocalMetrics& metrics,
                                                  const FusionParams& params);

/// Bayesian error q0*q_f + q1*(1 - q_d1) + q2*(1 - q_d2).
[[nodiscard]] double prob_error(const Priors& priors, const FusionQuality& quality) noexcept;

/// Fault-free error as a function of the likelihood thresholds.
[[nodiscard]] double prob_error(const SignalModel& model, const Priors& priors,
                                const LambdaThresholds& lambdas, const FusionParams& params);

}  // namespace dualdetect
