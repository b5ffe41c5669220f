#include "dualdetect/simulator.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dualdetect {

namespace {

Hypothesis pick(const std::array<double, 3>& weights, RandomSource& rng) {
  const double total = weights[0] + weights[1] + weights[2];
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (u < cumulative) return kAllHypotheses[i];
  }
  return kAllHypotheses[last_positive];
}

Hypothesis forced_change(Hypothesis original, const FaultModel& model, RandomSource& rng) {
  auto weights = model.change_weights(original);
  if (weights[0] + weights[1] + weights[2] == 0.0) {
    weights = {1.0, 1.0, 1.0};
    weights[index_of(original)] = 0.0;
  }
  return pick(weights, rng);
}

double error_rate(const std::vector<SensorRecord>& records, Hypothesis SensorRecord::*decision) {
  if (records.empty()) return 0.0;
  std::size_t wrong = 0;
  for (const auto& r : records) wrong += (r.*decision != r.truth);
  return static_cast<double>(wrong) / static_cast<double>(records.size());
}

}  // namespace

std::size_t FaultInjection::faulty_count(std::size_t sensor_count) const noexcept {
  // Slack absorbs representation error such as 0.29 * 100 = 28.999...
  const double raw = fault_probability * static_cast<double>(sensor_count);
  const double count = std::floor(raw + 1e-9);
  if (count <= 0.0) return 0;
  if (count >= static_cast<double>(sensor_count)) return sensor_count;
  return static_cast<std::size_t>(count);
}

std::vector<double> draw_observations(const SensorField& field, const SignalModel& model,
                                      RandomSource& rng) {
  std::vector<double> obs;
  obs.reserve(field.size());
  for (Hypothesis truth : field.truth) obs.push_back(sample_observation(model, truth, rng));
  return obs;
}

std::vector<Hypothesis> inject_faults(std::span<const Hypothesis> local,
                                      const FaultInjection& faults, std::vector<bool>& faulty,
                                      RandomSource& rng) {
  std::vector<Hypothesis> reported(local.begin(), local.end());
  faulty.assign(local.size(), false);

  if (faults.mode == FaultMode::AlphaTable) {
    for (std::size_t i = 0; i < local.size(); ++i) {
      reported[i] = pick(faults.model.reported_distribution(local[i]), rng);
      faulty[i] = reported[i] != local[i];
    }
    return reported;
  }

  // Partial Fisher-Yates: the first `count` slots become a uniform subset.
  const std::size_t count = faults.faulty_count(local.size());
  std::vector<std::size_t> order(local.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> draw(i, order.size() - 1);
    std::swap(order[i], order[draw(rng)]);
    const std::size_t sensor = order[i];
    faulty[sensor] = true;
    reported[sensor] = forced_change(local[sensor], faults.model, rng);
  }
  return reported;
}

std::vector<Hypothesis> fuse_reports(const std::vector<std::vector<std::size_t>>& neighbors,
                                     std::span<const Hypothesis> reports, int k) {
  std::vector<Hypothesis> final_decisions;
  final_decisions.reserve(neighbors.size());
  for (const auto& list : neighbors) {
    int positives = 0;
    int negatives = 0;
    for (std::size_t j : list) {
      positives += reports[j] == Hypothesis::Event1;
      negatives += reports[j] == Hypothesis::Event2;
    }
    final_decisions.push_back(apply_k_out_of_n(positives, negatives, k));
  }
  return final_decisions;
}

RunResult detect(const SensorField& field, std::span<const double> observations,
                 const GammaThresholds& gammas, const FusionParams& params,
                 const std::optional<FaultInjection>& faults, RandomSource& rng) {
  const std::size_t count = field.size();
  if (observations.size() != count || field.truth.size() != count ||
      field.neighbors.size() != count) {
    throw std::invalid_argument("field, truth, neighbour and observation sizes differ");
  }
  for (const auto& list : field.neighbors) {
    if (list.size() != static_cast<std::size_t>(params.n())) {
      throw std::invalid_argument("neighbour lists must have exactly n entries");
    }
  }

  std::vector<Hypothesis> local(count);
  for (std::size_t i = 0; i < count; ++i) local[i] = classify_observation(observations[i], gammas);

  std::vector<bool> faulty(count, false);
  std::vector<Hypothesis> reported =
      faults ? inject_faults(local, *faults, faulty, rng) : local;

  const auto final_decisions = fuse_reports(field.neighbors, reported, params.k());

  RunResult result;
  result.records.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto& r = result.records[i];
    r.position = field.positions[i];
    r.truth = field.truth[i];
    r.observation = observations[i];
    r.local_decision = local[i];
    r.reported_decision = reported[i];
    r.faulty = faulty[i];
    r.final_decision = final_decisions[i];
    result.faulty_sensors += faulty[i];
  }
  result.local_error_rate = error_rate(result.records, &SensorRecord::reported_decision);
  result.final_error_rate = error_rate(result.records, &SensorRecord::final_decision);
  result.neighbor_lists = field.neighbors;
  return result;
}

RunResult run_detection(const SensorField& field, const SignalModel& model,
                        const GammaThresholds& gammas, const FusionParams& params,
                        const std::optional<FaultInjection>& faults, RandomSource& rng) {
  const auto observations = draw_observations(field, model, rng);
  return detect(field, observations, gammas, params, faults, rng);
}

}  // namespace dualdetect
