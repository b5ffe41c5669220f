// Single-snapshot Monte Carlo run over a sensor field: observe, decide
// locally, optionally corrupt reports, fuse over neighbourhoods, score.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dualdetect/decision_rules.hpp"
#include "dualdetect/faults.hpp"
#include "dualdetect/field.hpp"
#include "dualdetect/fusion.hpp"
#include "dualdetect/signal_model.hpp"

namespace dualdetect {

enum class FaultMode {
  /// Exactly floor(fault_probability * N) sensors, chosen uniformly, switch
  /// to one of the two other labels, weighted by the alphas of their
  /// original label (uniform when both are zero).
  ForcedChange,
  /// Every sensor independently passes its decision through the full alpha
  /// transition table; fault_probability is ignored.
  AlphaTable,
};

struct FaultInjection {
  FaultModel model;
  double fault_probability = 0.0;
  FaultMode mode = FaultMode::ForcedChange;

  /// Number of sensors made faulty in ForcedChange mode.
  [[nodiscard]] std::size_t faulty_count(std::size_t sensor_count) const noexcept;
};

struct SensorRecord {
  Point position;
  Hypothesis truth = Hypothesis::Normal;
  double observation = 0.0;
  Hypothesis local_decision = Hypothesis::Normal;
  Hypothesis reported_decision = Hypothesis::Normal;
  bool faulty = false;
  Hypothesis final_decision = Hypothesis::Normal;
};

struct RunResult {
  std::vector<SensorRecord> records;
  double local_error_rate = 0.0;  ///< reported decisions vs truth
  double final_error_rate = 0.0;
  std::vector<std::vector<std::size_t>> neighbor_lists;
  std::size_t faulty_sensors = 0;
};

/// One observation per sensor under its ground truth.
[[nodiscard]] std::vector<double> draw_observations(const SensorField& field,
                                                    const SignalModel& model, RandomSource& rng);

/// Applies faults to local decisions. Returns the reported decisions and
/// writes the faulty flags.
[[nodiscard]] std::vector<Hypothesis> inject_faults(std::span<const Hypothesis> local,
                                                    const FaultInjection& faults,
                                                    std::vector<bool>& faulty, RandomSource& rng);

/// Modified k-out-of-n fusion of each sensor's neighbourhood reports.
[[nodiscard]] std::vector<Hypothesis> fuse_reports(
    const std::vector<std::vector<std::size_t>>& neighbors, std::span<const Hypothesis> reports,
    int k);

/// Classification, fault injection and fusion on given observations.
[[nodiscard]] RunResult detect(const SensorField& field, std::span<const double> observations,
                               const GammaThresholds& gammas, const FusionParams& params,
                               const std::optional<FaultInjection>& faults, RandomSource& rng);

/// detect() on freshly drawn observations.
[[nodiscard]] RunResult run_detection(const SensorField& field, const SignalModel& model,
                                      const GammaThresholds& gammas, const FusionParams& params,
                                      const std::optional<FaultInjection>& faults,
                                      RandomSource& rng);

}  // namespace dualdetect
