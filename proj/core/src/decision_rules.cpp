#include "dualdetect/decision_rules.hpp"

#include <cmath>
#include <stdexcept>

namespace dualdetect {

LambdaThresholds::LambdaThresholds(double lambda1, double lambda2)
    : lambda1_(lambda1), lambda2_(lambda2) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !std::isfinite(lambda1) ||
      !std::isfinite(lambda2)) {
    throw std::invalid_argument("likelihood thresholds must be finite and positive");
  }
}

bool LocalMetrics::is_valid(double tolerance) const noexcept {
  const auto in_unit = [tolerance](double p) {
    return p >= -tolerance && p <= 1.0 + tolerance;
  };
  return in_unit(p_d1) && in_unit(p_d2) && in_unit(p_f1) && in_unit(p_f2) && in_unit(p_m1) &&
         in_unit(p_m2) && p_d1 + p_m1 <= 1.0 + tolerance && p_d2 + p_m2 <= 1.0 + tolerance &&
         p_f1 + p_f2 <= 1.0 + tolerance;
}

GammaThresholds gammas_from_lambdas(const SignalModel& model, const LambdaThresholds& lambdas) {
  const double log_l1 = std::log(lambdas.lambda1());
  const double log_l2 = std::log(lambdas.lambda2());
  const double m0 = model.m0();
  const double m1 = model.m1();
  const double m2 = model.m2();
  return GammaThresholds{
      .gamma1 = log_l1 / (m1 - m0) + (m1 + m0) / 2.0,
      .gamma2 = log_l2 / (m2 - m0) + (m2 + m0) / 2.0,
      .gamma3 = (log_l2 - log_l1) / (m2 - m1) + (m2 + m1) / 2.0,
  };
}

Hypothesis classify_observation(double x, const GammaThresholds& gammas) noexcept {
  if (x >= gammas.event2_lower()) return Hypothesis::Event2;
  if (x >= gammas.gamma1 && x < gammas.gamma3) return Hypothesis::Event1;
  return Hypothesis::Normal;
}

double prob_decide_event1(const GammaThresholds& gammas, double mean) noexcept {
  // Event1 region is [gamma1, gamma3); it always lies below the Event2 edge.
  if (!(gammas.gamma3 > gammas.gamma1)) return 0.0;
  const double lo = gammas.gamma1 - mean;
  const double hi = gammas.gamma3 - mean;
  // Difference taken on the side of the axis that avoids cancellation.
  const double p = lo > 0.0 ? normal_sf(lo) - normal_sf(hi) : normal_cdf(hi) - normal_cdf(lo);
  return p > 0.0 ? p : 0.0;
}

double prob_decide_event2(const GammaThresholds& gammas, double mean) noexcept {
  return normal_sf(gammas.event2_lower() - mean);
}

LocalMetrics local_metrics(const SignalModel& model, const GammaThresholds& gammas) noexcept {
  return LocalMetrics{
      .p_d1 = prob_decide_event1(gammas, model.m1()),
      .p_d2 = prob_decide_event2(gammas, model.m2()),
      .p_f1 = prob_decide_event1(gammas, model.m0()),
      .p_f2 = prob_decide_event2(gammas, model.m0()),
      .p_m1 = prob_decide_event2(gammas, model.m1()),
      .p_m2 = prob_decide_event1(gammas, model.m2()),
  };
}

}  // namespace dualdetect
