// dualdetect: optimize thresholds, simulate a field, sweep parameters, or
// check the fusion closed forms against enumeration.
//
// Exit codes: 0 success, 1 I/O or check failure, 2 configuration error,
// 3 optimizer did not converge (results are still written).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dualdetect/config.hpp"
#include "dualdetect/csv.hpp"
#include "dualdetect/experiment.hpp"
#include "dualdetect/fusion.hpp"
#include "dualdetect/optimizer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

using namespace dualdetect;

/// Config file path plus per-key overrides shared by all subcommands.
struct ConfigOptions {
  std::string path;
  std::map<std::string, std::string> overrides;
  bool exclude_self_flag = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("-c,--config", path, "key = value configuration file");
    for (const auto& [key, help] : config_keys()) {
      std::string names = "--" + std::string(key);
      if (key.find('_') != std::string_view::npos && key != "exclude_self") {
        std::string dashed(key);
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += ",--" + dashed;
      }
      cmd.add_option_function<std::string>(
          names, [this, k = std::string(key)](const std::string& v) { overrides[k] = v; },
          std::string(help));
    }
    cmd.add_flag("--exclude-self", exclude_self_flag,
                 "exclude each sensor from its own neighbourhood");
  }

  [[nodiscard]] ExperimentConfig build() const {
    ExperimentConfig config = path.empty() ? default_config() : load_config(path);
    // Fixed order so that dependent keys (pf after alphas) behave predictably.
    for (const auto& [key, help] : config_keys()) {
      if (auto it = overrides.find(std::string(key)); it != overrides.end()) {
        apply_setting(config, key, it->second);
      }
    }
    if (exclude_self_flag) config.field.exclude_self = true;
    config.validate();
    return config;
  }
};

void warn_dual_quorum(const ExperimentConfig& config) {
  if (config.fusion().dual_quorum_possible()) {
    std::cerr << "warning: 2k <= n; both events can reach quorum and the closed-form "
                 "false-alarm terms overlap\n";
  }
}

void print_stage(std::string_view prefix, const OptimizationResult& r) {
  std::cout << prefix << "lambda1=" << format_number(r.lambda1) << '\n'
            << prefix << "lambda2=" << format_number(r.lambda2) << '\n'
            << prefix << "pe=" << format_number(r.objective_value) << '\n'
            << prefix << "evaluations=" << r.evaluations << '\n'
            << prefix << "converged=" << (r.converged ? "true" : "false") << '\n';
}

int cmd_optimize(const ConfigOptions& opts) {
  const auto config = opts.build();
  warn_dual_quorum(config);
  const auto before = resolve_thresholds(config, false);
  print_stage("", before.optimum);
  bool converged = before.optimum.converged;
  if (config.has_faults()) {
    const auto after = resolve_thresholds(config, true);
    print_stage("faulty.", after.optimum);
    converged = converged && after.optimum.converged;
  }
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_simulate(const ConfigOptions& opts) {
  const auto config = opts.build();
  warn_dual_quorum(config);
  const auto report = run_single(config);
  std::cout << read_text_file(config.output_dir / "summary.csv");
  for (const auto& path : report.written) std::cerr << "wrote " << path.string() << '\n';
  return report.converged() ? kExitOk : kExitNotConverged;
}

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    std::string piece = list.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
    piece.erase(0, piece.find_first_not_of(' '));
    piece.erase(piece.find_last_not_of(' ') + 1);
    if (piece.empty()) throw ConfigError("empty entry in --values list");
    out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_sweep(const ConfigOptions& opts, const std::string& param, const std::string& values) {
  const auto config = opts.build();
  const auto parameter = parse_sweep_parameter(param);
  const auto summary = run_sweep(config, parameter, split_values(values));
  const std::string csv = format_sweep(summary);
  const auto path = config.output_dir / ("sweep_" + std::string(sweep_parameter_name(parameter)) +
                                         ".csv");
  write_text_file(path, csv);
  std::cout << csv;
  std::cerr << "wrote " << path.string() << '\n';
  return summary.converged() ? kExitOk : kExitNotConverged;
}

LocalMetrics random_metrics(RandomSource& rng) {
  std::exponential_distribution<double> e(1.0);
  const auto simplex = [&] {
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = a + b + c;
    return std::pair{a / s, b / s};
  };
  LocalMetrics m;
  std::tie(m.p_d1, m.p_m1) = simplex();
  std::tie(m.p_d2, m.p_m2) = simplex();
  std::tie(m.p_f1, m.p_f2) = simplex();
  return m;
}

int cmd_oracle_check(int trials, int max_n, std::uint64_t seed, double tolerance) {
  if (max_n < 1 || max_n > kMaxOracleNeighbourhood || trials < 1) {
    std::cerr << "error: need trials >= 1 and 1 <= max-n <= " << kMaxOracleNeighbourhood << '\n';
    return kExitConfig;
  }
  RandomSource rng = make_stream(seed, "oracle-check");
  double worst = 0.0;
  int cases = 0;
  for (int t = 0; t < trials; ++t) {
    const auto metrics = random_metrics(rng);
    for (int n = 1; n <= max_n; ++n) {
      for (int k = n / 2 + 1; k <= n; ++k) {
        const FusionParams params(n, k);
        const auto closed = fusion_quality(metrics, params);
        const auto exact = oracle_fusion_quality(metrics, params);
        for (double d : {closed.q_d1 - exact.q_d1, closed.q_d2 - exact.q_d2,
                         closed.q_f1 - exact.q_f1, closed.q_f2 - exact.q_f2}) {
          worst = std::max(worst, std::abs(d));
        }
        ++cases;
      }
    }
  }
  const bool ok = worst <= tolerance;
  std::cout << "cases=" << cases << '\n'
            << "max_abs_diff=" << format_number(worst) << '\n'
            << "tolerance=" << format_number(tolerance) << '\n'
            << "result=" << (ok ? "pass" : "fail") << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant two-event distributed detection toolkit"};
  app.require_subcommand(1);

  ConfigOptions optimize_opts;
  auto* optimize = app.add_subcommand("optimize", "print optimal lambda thresholds and error");
  optimize_opts.attach(*optimize);

  ConfigOptions simulate_opts;
  auto* simulate = app.add_subcommand("simulate", "run one seeded simulation and write CSVs");
  simulate_opts.attach(*simulate);
  std::string simulate_out;
  simulate->add_option("-o,--out", simulate_out, "output directory (same as --output_dir)");

  ConfigOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "average errors over a parameter sweep");
  sweep_opts.attach(*sweep);
  std::string sweep_param;
  std::string sweep_values;
  sweep->add_option("--param", sweep_param, "pf, nk, sensors, means or priors")->required();
  sweep->add_option("--values", sweep_values,
                    "comma-separated values; tuples use ':' (e.g. 3:2,5:3)")
      ->required();
  std::string sweep_out;
  sweep->add_option("-o,--out", sweep_out, "output directory (same as --output_dir)");

  auto* oracle = app.add_subcommand("oracle-check",
                                    "compare closed-form fusion with 3^n enumeration");
  int trials = 1000;
  int max_n = 7;
  std::uint64_t oracle_seed = 1;
  double tolerance = 1e-12;
  oracle->add_option("--trials", trials, "random metric draws");
  oracle->add_option("--max-n", max_n, "largest neighbourhood size checked");
  oracle->add_option("--seed", oracle_seed, "random seed");
  oracle->add_option("--tolerance", tolerance, "maximum absolute difference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*optimize) return cmd_optimize(optimize_opts);
    if (*simulate) {
      if (!simulate_out.empty()) simulate_opts.overrides["output_dir"] = simulate_out;
      return cmd_simulate(simulate_opts);
    }
    if (*sweep) {
      if (!sweep_out.empty()) sweep_opts.overrides["output_dir"] = sweep_out;
      return cmd_sweep(sweep_opts, sweep_param, sweep_values);
    }
    if (*oracle) return cmd_oracle_check(trials, max_n, oracle_seed, tolerance);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
