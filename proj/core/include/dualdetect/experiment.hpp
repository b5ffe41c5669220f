// Reproduction harness: threshold optimization plus seeded simulation for a
// single configuration, and parameter sweeps averaged over repetitions.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualdetect/config.hpp"
#include "dualdetect/decision_rules.hpp"
#include "dualdetect/optimizer.hpp"
#include "dualdetect/simulator.hpp"

namespace dualdetect {

/// Independent, reproducible stream for (seed, label).
[[nodiscard]] RandomSource make_stream(std::uint64_t seed, std::string_view label);

/// Thresholds of one stage (fault-free or faulty), optimized or overridden.
struct StageThresholds {
  OptimizationResult optimum;
  bool overridden = false;
  GammaThresholds gammas;
};

/// Fault-free stage when `faulty` is false; otherwise optimizes the
/// fault-aware error of the configured fault model.
[[nodiscard]] StageThresholds resolve_thresholds(const ExperimentConfig& config, bool faulty);

/// Error percentages of one seeded replicate.
struct ReplicateErrors {
  double ld_bf = 0.0;
  double fd_bf = 0.0;
  double ld_af = 0.0;
  double fd_af = 0.0;
};

struct ReplicateRuns {
  RunResult before;                ///< fault-free thresholds, no faults
  std::optional<RunResult> after;  ///< faulty-stage thresholds, faults injected
  [[nodiscard]] ReplicateErrors errors() const;
};

/// One field, one set of observations, scored before and after faults.
[[nodiscard]] ReplicateRuns simulate_replicate(const ExperimentConfig& config,
                                               const StageThresholds& before,
                                               const std::optional<StageThresholds>& after,
                                               RandomSource& rng);

struct SingleRunReport {
  StageThresholds before;
  std::optional<StageThresholds> after;
  ReplicateRuns runs;
  std::vector<std::filesystem::path> written;

  /// False if any optimization that ran did not converge.
  [[nodiscard]] bool converged() const noexcept;
};

/// Optimizes (unless overridden), simulates once with the config seed, and
/// writes local/final scatter CSVs plus summary.csv under config.output_dir.
[[nodiscard]] SingleRunReport run_single(const ExperimentConfig& config);

enum class SweepParameter { FaultProbability, NeighbourhoodQuorum, SensorCount, Means, Priors };

/// Accepts pf, nk, sensors, means, priors. Throws ConfigError otherwise.
[[nodiscard]] SweepParameter parse_sweep_parameter(std::string_view name);
[[nodiscard]] std::string_view sweep_parameter_name(SweepParameter p) noexcept;

/// Applies one sweep value: "0.12" for pf, "5:3" for nk, "400" for sensors,
/// "0:3:6" for means and priors.
void apply_sweep_value(ExperimentConfig& config, SweepParameter p, std::string_view value);

struct SweepRow {
  std::string value;
  double ld_bf = 0.0;  ///< percent
  double fd_bf = 0.0;
  double ld_af = 0.0;
  double fd_af = 0.0;
  double lambda1 = 0.0;  ///< faulty-stage thresholds, or fault-free when no faults
  double lambda2 = 0.0;
  StageThresholds before;
  std::optional<StageThresholds> after;
};

struct SweepSummary {
  SweepParameter parameter = SweepParameter::FaultProbability;
  int repetitions = 0;
  std::vector<SweepRow> rows;

  [[nodiscard]] bool converged() const noexcept;
};

/// For each value: re-optimize, run `repetitions` replicates with seeds
/// base_seed + r on a stream labelled by the cell's value, and average.
[[nodiscard]] SweepSummary run_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                     const std::vector<std::string>& values);

[[nodiscard]] std::string format_sweep(const SweepSummary& summary);

}  // namespace dualdetect
