// Three-hypothesis Gaussian observation model and standard normal helpers.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace dualdetect {

/// Ground truth at a sensor location, or a sensor's decision about it.
enum class Hypothesis : std::uint8_t { Normal, Event1, Event2 };

inline constexpr std::array<Hypothesis, 3> kAllHypotheses{
    Hypothesis::Normal, Hypothesis::Event1, Hypothesis::Event2};

/// Decision encoding used on the wire: Normal=0, Event1=+1, Event2=-1.
[[nodiscard]] constexpr int to_decision(Hypothesis h) noexcept {
  switch (h) {
    case Hypothesis::Event1: return 1;
    case Hypothesis::Event2: return -1;
    case Hypothesis::Normal: break;
  }
  return 0;
}

/// Inverse of to_decision. Throws std::invalid_argument for values outside {-1, 0, 1}.
[[nodiscard]] Hypothesis from_decision(int code);

[[nodiscard]] std::string_view to_string(Hypothesis h) noexcept;

/// Index 0/1/2 for Normal/Event1/Event2, for table lookups.
[[nodiscard]] constexpr std::size_t index_of(Hypothesis h) noexcept {
  return static_cast<std::size_t>(h);
}

/// Unit-variance Gaussian means under Normal, Event1 and Event2.
/// Requires m2 > m1 > m0.
class SignalModel {
 public:
  SignalModel(double m0, double m1, double m2);

  [[nodiscard]] double m0() const noexcept { return means_[0]; }
  [[nodiscard]] double m1() const noexcept { return means_[1]; }
  [[nodiscard]] double m2() const noexcept { return means_[2]; }
  [[nodiscard]] double mean(Hypothesis h) const noexcept { return means_[index_of(h)]; }

  friend bool operator==(const SignalModel&, const SignalModel&) = default;

 private:
  std::array<double, 3> means_;
};

/// Prior probabilities of Normal, Event1, Event2. Must lie in [0, 1] and sum
/// to 1 within 1e-9.
class Priors {
 public:
  static constexpr double kSumTolerance = 1e-9;

  Priors(double q0, double q1, double q2);

  [[nodiscard]] double q0() const noexcept { return q_[0]; }
  [[nodiscard]] double q1() const noexcept { return q_[1]; }
  [[nodiscard]] double q2() const noexcept { return q_[2]; }
  [[nodiscard]] double of(Hypothesis h) const noexcept { return q_[index_of(h)]; }

  friend bool operator==(const Priors&, const Priors&) = default;

 private:
  std::array<double, 3> q_;
};

/// Standard normal CDF. Saturates to exactly 0/1 far in the tails.
[[nodiscard]] double normal_cdf(double z) noexcept;

/// Upper tail 1 - normal_cdf(z), evaluated without cancellation.
[[nodiscard]] double normal_sf(double z) noexcept;

using RandomSource = std::mt19937_64;

/// One draw from N(mean(truth), 1).
[[nodiscard]] double sample_observation(const SignalModel& model, Hypothesis truth,
                                        RandomSource& rng);

}  // namespace dualdetect
