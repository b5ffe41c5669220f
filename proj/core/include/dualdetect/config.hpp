// Experiment configuration and its flat `key = value` file format.
//
//   # comment
//   sensors = 200
//   event1 = 0, 0, 10, 10        # x_min, y_min, x_max, y_max
//   means = 0, 3, 6              # shorthand for m0, m1, m2
//
// Recognised keys are listed by config_keys(). Later assignments win, which
// is how command-line overrides are layered over a file.
#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dualdetect/faults.hpp"
#include "dualdetect/field.hpp"
#include "dualdetect/fusion.hpp"
#include "dualdetect/optimizer.hpp"
#include "dualdetect/signal_model.hpp"
#include "dualdetect/simulator.hpp"

namespace dualdetect {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  FieldConfig field;
  std::array<double, 3> means{0.0, 3.0, 6.0};
  std::array<double, 3> priors{0.59, 0.25, 0.16};
  double fault_probability = 0.0;
  /// Explicit alpha1..alpha6. When absent the fault probability is split evenly.
  std::optional<std::array<double, 6>> alphas;
  FaultMode fault_mode = FaultMode::ForcedChange;
  int repetitions = 50;
  std::filesystem::path output_dir = "out";
  /// Fixed (lambda1, lambda2) used instead of optimizing, for both the
  /// fault-free and the faulty stage.
  std::optional<std::pair<double, double>> lambda_override;
  OptimizerOptions optimizer;
  /// Replace the event regions by corner-anchored rectangles whose areas are
  /// q1 and q2 of the field (Event1 bottom-left, Event2 top-right).
  bool regions_from_priors = false;

  /// The field actually simulated, with regions_from_priors applied.
  [[nodiscard]] FieldConfig field_config() const;

  [[nodiscard]] SignalModel model() const;
  [[nodiscard]] Priors prior_probabilities() const;
  [[nodiscard]] FusionParams fusion() const;
  [[nodiscard]] FaultModel fault_model() const;
  /// Whether any fault is configured.
  [[nodiscard]] bool has_faults() const;
  [[nodiscard]] std::optional<FaultInjection> fault_injection() const;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

/// The reference two-event setup: 20 x 20 field, 200 sensors, n = 5, k = 3.
[[nodiscard]] ExperimentConfig default_config();

/// Every key accepted by apply_setting, with a one-line description.
[[nodiscard]] const std::vector<std::pair<std::string_view, std::string_view>>& config_keys();

/// Sets one key. Throws ConfigError for unknown keys and malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines over `config`. Errors carry the line number.
void parse_config(std::istream& in, ExperimentConfig& config, std::string_view source = "<input>");

[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Splits on ',' or ':' and parses each piece as a double.
[[nodiscard]] std::vector<double> parse_number_list(std::string_view text);

}  // namespace dualdetect
