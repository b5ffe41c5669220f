#include "dualdetect/experiment.hpp"

#include <random>

#include "dualdetect/csv.hpp"

namespace dualdetect {

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string percent(double rate) { return format_number(100.0 * rate); }

std::string cell_label(SweepParameter p, std::string_view value) {
  std::string label(sweep_parameter_name(p));
  label += '=';
  label += value;
  return label;
}

}  // namespace

RandomSource make_stream(std::uint64_t seed, std::string_view label) {
  const std::uint64_t h = fnv1a(label);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return RandomSource(seq);
}

StageThresholds resolve_thresholds(const ExperimentConfig& config, bool faulty) {
  const SignalModel model = config.model();
  const Priors priors = config.prior_probabilities();
  const FusionParams params = config.fusion();
  std::optional<FaultModel> faults;
  if (faulty) faults = config.fault_model();

  StageThresholds stage;
  if (config.lambda_override) {
    const LambdaThresholds fixed(config.lambda_override->first, config.lambda_override->second);
    stage.overridden = true;
    stage.optimum.lambda1 = fixed.lambda1();
    stage.optimum.lambda2 = fixed.lambda2();
    stage.optimum.objective_value =
        faults ? prob_error_faulty(model, priors, fixed, params, *faults)
               : prob_error(model, priors, fixed, params);
    stage.optimum.evaluations = 1;
    stage.optimum.converged = true;
  } else {
    stage.optimum = minimize_error(model, priors, params, faults, config.optimizer);
  }
  stage.gammas = gammas_from_lambdas(model, stage.optimum.lambdas());
  return stage;
}

ReplicateErrors ReplicateRuns::errors() const {
  ReplicateErrors e;
  e.ld_bf = 100.0 * before.local_error_rate;
  e.fd_bf = 100.0 * before.final_error_rate;
  const RunResult& faulted = after ? *after : before;
  e.ld_af = 100.0 * faulted.local_error_rate;
  e.fd_af = 100.0 * faulted.final_error_rate;
  return e;
}

ReplicateRuns simulate_replicate(const ExperimentConfig& config, const StageThresholds& before,
                                 const std::optional<StageThresholds>& after,
                                 RandomSource& rng) {
  const SensorField field = generate_field(config.field_config(), rng);
  const auto observations = draw_observations(field, config.model(), rng);
  const FusionParams params = config.fusion();

  ReplicateRuns runs{detect(field, observations, before.gammas, params, std::nullopt, rng), {}};
  if (after) {
    runs.after = detect(field, observations, after->gammas, params, config.fault_injection(), rng);
  }
  return runs;
}

bool SingleRunReport::converged() const noexcept {
  return before.optimum.converged && (!after || after->optimum.converged);
}

SingleRunReport run_single(const ExperimentConfig& config) {
  config.validate();
  SingleRunReport report;
  report.before = resolve_thresholds(config, false);
  if (config.has_faults()) report.after = resolve_thresholds(config, true);

  RandomSource rng = make_stream(config.field.seed, "");
  report.runs = simulate_replicate(config, report.before, report.after, rng);

  const auto& dir = config.output_dir;
  const auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    write_text_file(path, content);
    report.written.push_back(path);
  };
  emit("local_bf.csv", format_scatter(scatter_rows(report.runs.before, ScatterLayer::Local)));
  emit("final_bf.csv", format_scatter(scatter_rows(report.runs.before, ScatterLayer::Final)));
  if (report.runs.after) {
    emit("local_af.csv", format_scatter(scatter_rows(*report.runs.after, ScatterLayer::Local)));
    emit("final_af.csv", format_scatter(scatter_rows(*report.runs.after, ScatterLayer::Final)));
  }

  SummaryEntries summary{
      {"seed", std::to_string(config.field.seed)},
      {"sensors", std::to_string(config.field.sensor_count)},
      {"n", std::to_string(config.field.neighborhood_size)},
      {"k", std::to_string(config.field.quorum)},
      {"pf", format_number(config.fault_probability)},
      {"lambda1", format_number(report.before.optimum.lambda1)},
      {"lambda2", format_number(report.before.optimum.lambda2)},
      {"pe", format_number(report.before.optimum.objective_value)},
      {"converged", report.before.optimum.converged ? "1" : "0"},
      {"ld_bf", percent(report.runs.before.local_error_rate)},
      {"fd_bf", percent(report.runs.before.final_error_rate)},
  };
  if (report.after && report.runs.after) {
    const auto& a = *report.after;
    const auto& run = *report.runs.after;
    summary.insert(summary.end(), {
        {"lambda1_af", format_number(a.optimum.lambda1)},
        {"lambda2_af", format_number(a.optimum.lambda2)},
        {"pe_af", format_number(a.optimum.objective_value)},
        {"converged_af", a.optimum.converged ? "1" : "0"},
        {"faulty_count", std::to_string(run.faulty_sensors)},
        {"ld_af", percent(run.local_error_rate)},
        {"fd_af", percent(run.final_error_rate)},
    });
  }
  emit("summary.csv", format_summary(summary));
  return report;
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "pf") return SweepParameter::FaultProbability;
  if (name == "nk") return SweepParameter::NeighbourhoodQuorum;
  if (name == "sensors") return SweepParameter::SensorCount;
  if (name == "means") return SweepParameter::Means;
  if (name == "priors") return SweepParameter::Priors;
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected pf, nk, sensors, means or priors)");
}

std::string_view sweep_parameter_name(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::FaultProbability: return "pf";
    case SweepParameter::NeighbourhoodQuorum: return "nk";
    case SweepParameter::SensorCount: return "sensors";
    case SweepParameter::Means: return "means";
    case SweepParameter::Priors: return "priors";
  }
  return "pf";
}

void apply_sweep_value(ExperimentConfig& config, SweepParameter p, std::string_view value) {
  switch (p) {
    case SweepParameter::FaultProbability:
      apply_setting(config, "pf", value);
      return;
    case SweepParameter::NeighbourhoodQuorum: {
      const auto colon = value.find(':');
      if (colon == std::string_view::npos) {
        throw ConfigError("nk sweep values look like n:k, got '" + std::string(value) + "'");
      }
      apply_setting(config, "n", value.substr(0, colon));
      apply_setting(config, "k", value.substr(colon + 1));
      return;
    }
    case SweepParameter::SensorCount:
      apply_setting(config, "sensors", value);
      return;
    case SweepParameter::Means:
      apply_setting(config, "means", value);
      return;
    case SweepParameter::Priors:
      // Priors describe the event areas, so the regions follow them.
      apply_setting(config, "priors", value);
      config.regions_from_priors = true;
      return;
  }
}

bool SweepSummary::converged() const noexcept {
  for (const auto& row : rows) {
    if (!row.before.optimum.converged) return false;
    if (row.after && !row.after->optimum.converged) return false;
  }
  return true;
}

SweepSummary run_sweep(const ExperimentConfig& base, SweepParameter parameter,
                       const std::vector<std::string>& values) {
  SweepSummary summary;
  summary.parameter = parameter;
  summary.repetitions = base.repetitions;

  for (const auto& value : values) {
    ExperimentConfig config = base;
    apply_sweep_value(config, parameter, value);
    config.validate();

    SweepRow row;
    row.value = value;
    row.before = resolve_thresholds(config, false);
    if (config.has_faults()) row.after = resolve_thresholds(config, true);

    const std::string label = cell_label(parameter, value);
    ReplicateErrors sum;
    for (int r = 0; r < config.repetitions; ++r) {
      RandomSource rng = make_stream(config.field.seed + static_cast<std::uint64_t>(r), label);
      const auto e = simulate_replicate(config, row.before, row.after, rng).errors();
      sum.ld_bf += e.ld_bf;
      sum.fd_bf += e.fd_bf;
      sum.ld_af += e.ld_af;
      sum.fd_af += e.fd_af;
    }
    const double reps = config.repetitions;
    row.ld_bf = sum.ld_bf / reps;
    row.fd_bf = sum.fd_bf / reps;
    row.ld_af = sum.ld_af / reps;
    row.fd_af = sum.fd_af / reps;
    const auto& shown = row.after ? row.after->optimum : row.before.optimum;
    row.lambda1 = shown.lambda1;
    row.lambda2 = shown.lambda2;
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

std::string format_sweep(const SweepSummary& summary) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& row : summary.rows) {
    out += row.value;
    for (double v : {row.ld_bf, row.fd_bf, row.ld_af, row.fd_af, row.lambda1, row.lambda2}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace dualdetect
