#include "dualdetect/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dualdetect {

Hypothesis from_decision(int code) {
  switch (code) {
    case 0: return Hypothesis::Normal;
    case 1: return Hypothesis::Event1;
    case -1: return Hypothesis::Event2;
    default: break;
  }
  throw std::invalid_argument("decision code must be -1, 0 or 1, got " + std::to_string(code));
}

std::string_view to_string(Hypothesis h) noexcept {
  switch (h) {
    case Hypothesis::Event1: return "event1";
    case Hypothesis::Event2: return "event2";
    case Hypothesis::Normal: break;
  }
  return "normal";
}

SignalModel::SignalModel(double m0, double m1, double m2) : means_{m0, m1, m2} {
  if (!std::isfinite(m0) || !std::isfinite(m1) || !std::isfinite(m2)) {
    throw std::invalid_argument("signal means must be finite");
  }
  if (!(m2 > m1 && m1 > m0)) {
    throw std::invalid_argument("signal means must satisfy m2 > m1 > m0");
  }
}

Priors::Priors(double q0, double q1, double q2) : q_{q0, q1, q2} {
  for (double q : q_) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw std::invalid_argument("prior probabilities must lie in [0, 1]");
    }
  }
  if (std::abs(q0 + q1 + q2 - 1.0) > kSumTolerance) {
    throw std::invalid_argument("prior probabilities must sum to 1");
  }
}

double normal_cdf(double z) noexcept {
  return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0);
}

double normal_sf(double z) noexcept {
  return 0.5 * std::erfc(z * std::numbers::sqrt2 / 2.0);
}

double sample_observation(const SignalModel& model, Hypothesis truth, RandomSource& rng) {
  std::normal_distribution<double> noise(model.mean(truth), 1.0);
  return noise(rng);
}

}  // namespace dualdetect
