// Numerical search for the likelihood thresholds minimizing the detection error.
//
// The error surface is piecewise (the ordering of gamma1..gamma3 changes which
// regions exist), so the search is derivative-free: an exhaustive coarse grid
// over (ln lambda1, ln lambda2) and then a shrinking pattern search from the
// best cell.
#pragma once

#include <functional>
#include <optional>

#include "dualdetect/decision_rules.hpp"
#include "dualdetect/faults.hpp"
#include "dualdetect/fusion.hpp"
#include "dualdetect/signal_model.hpp"

namespace dualdetect {

struct OptimizerOptions {
  double log_lower = -5.0;  ///< grid and search box in ln(lambda), both axes
  double log_upper = 5.0;
  int grid_points = 101;    ///< per axis
  double initial_step = 0.1;
  double final_step = 1e-6;
  int max_refine_evaluations = 10000;
};

struct OptimizationResult {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double objective_value = 0.0;
  int evaluations = 0;  ///< grid plus refinement
  bool converged = false;

  [[nodiscard]] LambdaThresholds lambdas() const { return {lambda1, lambda2}; }
};

using ThresholdObjective = std::function<double(const LambdaThresholds&)>;

/// Minimizes any objective of (lambda1, lambda2). Deterministic; coarse-grid
/// ties go to the smallest ln(lambda1), then the smallest ln(lambda2).
[[nodiscard]] OptimizationResult minimize_thresholds(const ThresholdObjective& objective,
                                                     const OptimizerOptions& options = {});

/// prob_error if `faults` is empty, prob_error_faulty otherwise.
[[nodiscard]] OptimizationResult minimize_error(const SignalModel& model, const Priors& priors,
                                                const FusionParams& params,
                                                const std::optional<FaultModel>& faults,
                                                const OptimizerOptions& options = {});

}  // namespace dualdetect
