// Local (first layer) ternary decisions: likelihood thresholds, their
// observation-space equivalents, the classifier, and its closed-form metrics.
#pragma once

#include "dualdetect/signal_model.hpp"

namespace dualdetect {

/// Likelihood-ratio comparison thresholds. Both must be strictly positive.
class LambdaThresholds {
 public:
  LambdaThresholds(double lambda1, double lambda2);

  [[nodiscard]] double lambda1() const noexcept { return lambda1_; }
  [[nodiscard]] double lambda2() const noexcept { return lambda2_; }

  friend bool operator==(const LambdaThresholds&, const LambdaThresholds&) = default;

 private:
  double lambda1_;
  double lambda2_;
};

/// Observation-space cutoffs.
///   gamma1: Normal vs Event1 boundary
///   gamma2: Normal vs Event2 boundary
///   gamma3: Event1 vs Event2 boundary
struct GammaThresholds {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;

  /// Lower edge of the Event2 decision region, max(gamma2, gamma3).
  [[nodiscard]] double event2_lower() const noexcept {
    return gamma2 > gamma3 ? gamma2 : gamma3;
  }

  friend bool operator==(const GammaThresholds&, const GammaThresholds&) = default;
};

/// The six per-sensor decision probabilities.
struct LocalMetrics {
  double p_d1 = 0.0;  ///< P(decide Event1 | Event1)
  double p_d2 = 0.0;  ///< P(decide Event2 | Event2)
  double p_f1 = 0.0;  ///< P(decide Event1 | Normal)
  double p_f2 = 0.0;  ///< P(decide Event2 | Normal)
  double p_m1 = 0.0;  ///< P(decide Event2 | Event1)
  double p_m2 = 0.0;  ///< P(decide Event1 | Event2)

  /// True when every field is in [0, 1] and each conditional pair sums to at most 1,
  /// allowing `tolerance` of rounding slack.
  [[nodiscard]] bool is_valid(double tolerance = 1e-12) const noexcept;

  friend bool operator==(const LocalMetrics&, const LocalMetrics&) = default;
};

[[nodiscard]] GammaThresholds gammas_from_lambdas(const SignalModel& model,
                                                  const LambdaThresholds& lambdas);

/// Event2 iff x >= max(gamma2, gamma3); otherwise Event1 iff gamma1 <= x < gamma3;
/// otherwise Normal. Thresholds in any order give a partition of the real line.
[[nodiscard]] Hypothesis classify_observation(double x, const GammaThresholds& gammas) noexcept;

/// Probability that classify_observation returns Event1 / Event2 for an
/// observation drawn from N(mean, 1).
[[nodiscard]] double prob_decide_event1(const GammaThresholds& gammas, double mean) noexcept;
[[nodiscard]] double prob_decide_event2(const GammaThresholds& gammas, double mean) noexcept;

/// Closed-form metrics of the classifier: the measure of each decision region
/// under each hypothesis.
[[nodiscard]] LocalMetrics local_metrics(const SignalModel& model,
                                         const GammaThresholds& gammas) noexcept;

}  // namespace dualdetect
