#include "dualdetect/optimizer.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace dualdetect {

namespace {

struct LogPoint {
  double u;  // ln lambda1
  double v;  // ln lambda2
};

constexpr std::array<std::array<int, 2>, 8> kDirections{{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
}};

void validate(const OptimizerOptions& o) {
  if (!(o.log_lower < o.log_upper)) throw std::invalid_argument("empty search box");
  if (o.grid_points < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  if (!(o.initial_step > 0.0) || !(o.final_step > 0.0) || o.final_step > o.initial_step) {
    throw std::invalid_argument("pattern search steps must satisfy 0 < final <= initial");
  }
  if (o.max_refine_evaluations < 0) throw std::invalid_argument("negative evaluation budget");
}

}  // namespace

OptimizationResult minimize_thresholds(const ThresholdObjective& objective,
                                       const OptimizerOptions& options) {
  validate(options);
  int evaluations = 0;
  const auto eval = [&](LogPoint p) {
    ++evaluations;
    return objective(LambdaThresholds(std::exp(p.u), std::exp(p.v)));
  };

  const double spacing = (options.log_upper - options.log_lower) / (options.grid_points - 1);
  const auto grid_at = [&](int i) {
    return i == options.grid_points - 1 ? options.log_upper : options.log_lower + i * spacing;
  };

  LogPoint best{grid_at(0), grid_at(0)};
  double best_value = eval(best);
  for (int i = 0; i < options.grid_points; ++i) {
    for (int j = 0; j < options.grid_points; ++j) {
      if (i == 0 && j == 0) continue;
      const LogPoint p{grid_at(i), grid_at(j)};
      const double value = eval(p);
      if (value < best_value) {
        best_value = value;
        best = p;
      }
    }
  }

  const auto inside = [&](LogPoint p) {
    return p.u >= options.log_lower && p.u <= options.log_upper && p.v >= options.log_lower &&
           p.v <= options.log_upper;
  };

  const int budget_end = evaluations + options.max_refine_evaluations;
  double step = options.initial_step;
  bool converged = false;
  while (evaluations < budget_end) {
    if (step < options.final_step) {
      converged = true;
      break;
    }
    LogPoint candidate = best;
    double candidate_value = best_value;
    for (const auto& d : kDirections) {
      if (evaluations >= budget_end) break;
      const LogPoint p{best.u + d[0] * step, best.v + d[1] * step};
      if (!inside(p)) continue;
      const double value = eval(p);
      if (value < candidate_value) {
        candidate_value = value;
        candidate = p;
      }
    }
    if (candidate_value < best_value) {
      best = candidate;
      best_value = candidate_value;
    } else {
      step *= 0.5;
    }
  }
  if (!converged && step < options.final_step) converged = true;

  OptimizationResult result;
  result.lambda1 = std::exp(best.u);
  result.lambda2 = std::exp(best.v);
  result.objective_value = best_value;
  result.evaluations = evaluations;
  result.converged = converged;
  return result;
}

OptimizationResult minimize_error(const SignalModel& model, const Priors& priors,
                                  const FusionParams& params,
                                  const std::optional<FaultModel>& faults,
                                  const OptimizerOptions& options) {
  if (faults) {
    return minimize_thresholds(
        [&](const LambdaThresholds& l) {
          return prob_error_faulty(model, priors, l, params, *faults);
        },
        options);
  }
  return minimize_thresholds(
      [&](const LambdaThresholds& l) { return prob_error(model, priors, l, params); }, options);
}

}  // namespace dualdetect
