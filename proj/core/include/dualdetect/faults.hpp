// Sensor-fault model for reported local decisions and the fault-aware error.
//
// alpha index | original | reported
//      1      |   +1     |    0
//      2      |   -1     |    0
//      3      |   +1     |   -1
//      4      |   -1     |   +1
//      5      |    0     |   +1
//      6      |    0     |   -1
#pragma once

#include <array>
#include <stdexcept>

#include "dualdetect/decision_rules.hpp"
#include "dualdetect/fusion.hpp"
#include "dualdetect/signal_model.hpp"

namespace dualdetect {

/// Raised when fault-adjusted metrics leave [0, 1].
class FaultRangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FaultModel {
 public:
  /// All-zero (fault-free) model.
  FaultModel() = default;
  /// alphas[0] is alpha1 ... alphas[5] is alpha6.
  explicit FaultModel(const std::array<double, 6>& alphas);

  /// Splits a total fault probability evenly, alpha_i = total / 6.
  [[nodiscard]] static FaultModel uniform(double total);

  /// alpha_i for i in 1..6.
  [[nodiscard]] double alpha(int i) const;
  [[nodiscard]] const std::array<double, 6>& alphas() const noexcept { return alphas_; }

  /// Aggregate fault probability, the sum of all alphas.
  [[nodiscard]] double total() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;

  /// Distribution of the reported decision given the original one, indexed
  /// by index_of(Hypothesis).
  [[nodiscard]] std::array<double, 3> reported_distribution(Hypothesis original) const noexcept;

  /// Relative weights of the two labels a changed decision can become (the
  /// entry for `original` itself is 0).
  [[nodiscard]] std::array<double, 3> change_weights(Hypothesis original) const noexcept;

  friend bool operator==(const FaultModel&, const FaultModel&) = default;

 private:
  std::array<double, 6> alphas_{};
};

/// Local metrics as seen through faulty reporting. Throws FaultRangeError if
/// any output leaves [0, 1]; values are never clamped.
[[nodiscard]] LocalMetrics fault_adjust(const LocalMetrics& metrics, const FaultModel& faults);

/// Error of the full pipeline with faulty reporting. Reduces exactly to the
/// fault-free prob_error for an all-zero fault model.
[[nodiscard]] double prob_error_faulty(const SignalModel& model, const Priors& priors,
                                       const LambdaThresholds& lambdas,
                                       const FusionParams& params, const FaultModel& faults);

}  // namespace dualdetect
