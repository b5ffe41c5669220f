#include "dualdetect/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <string>

namespace dualdetect {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  const long long v = parse_integer(key, text);
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) {
    throw ConfigError(std::string(key) + ": value out of range");
  }
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(std::string(key) + ": expected true/false, got '" + std::string(text) + "'");
}

template <std::size_t N>
std::array<double, N> parse_tuple(std::string_view key, std::string_view text) {
  std::vector<double> values;
  try {
    values = parse_number_list(text);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
  if (values.size() != N) {
    throw ConfigError(std::string(key) + ": expected " + std::to_string(N) + " values, got " +
                      std::to_string(values.size()));
  }
  std::array<double, N> out{};
  std::copy(values.begin(), values.end(), out.begin());
  return out;
}

Rectangle parse_rectangle(std::string_view key, std::string_view text) {
  const auto v = parse_tuple<4>(key, text);
  try {
    return Rectangle(v[0], v[1], v[2], v[3]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

double total(const std::array<double, 6>& a) {
  double s = 0.0;
  for (double x : a) s += x;
  return s;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = text.find_first_of(",:", start);
    const auto piece = text.substr(start, stop == std::string_view::npos ? text.npos : stop - start);
    out.push_back(parse_double("value", piece));
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  return out;
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

const std::vector<std::pair<std::string_view, std::string_view>>& config_keys() {
  static const std::vector<std::pair<std::string_view, std::string_view>> keys{
      {"width", "field width"},
      {"height", "field height"},
      {"sensors", "number of sensors N"},
      {"event1", "event1 rectangle x_min,y_min,x_max,y_max"},
      {"event2", "event2 rectangle x_min,y_min,x_max,y_max"},
      {"n", "neighbourhood size"},
      {"k", "vote threshold"},
      {"exclude_self", "exclude a sensor from its own neighbourhood (true/false)"},
      {"seed", "base random seed"},
      {"m0", "mean under Normal"},
      {"m1", "mean under Event1"},
      {"m2", "mean under Event2"},
      {"means", "m0,m1,m2"},
      {"q0", "prior of Normal"},
      {"q1", "prior of Event1"},
      {"q2", "prior of Event2"},
      {"priors", "q0,q1,q2"},
      {"pf", "total sensor fault probability P_f (uniform alpha split)"},
      {"alphas", "explicit alpha1..alpha6; sets pf to their sum"},
      {"fault_mode", "forced-change or alpha-table"},
      {"repetitions", "seeded runs per sweep cell"},
      {"output_dir", "directory for CSV outputs"},
      {"lambda1", "fixed lambda1 (skips optimization; needs lambda2)"},
      {"lambda2", "fixed lambda2 (skips optimization; needs lambda1)"},
      {"grid_min", "lower ln(lambda) bound of the search box"},
      {"grid_max", "upper ln(lambda) bound of the search box"},
      {"grid_points", "coarse grid points per axis"},
      {"max_evaluations", "pattern-search evaluation budget after the grid"},
      {"regions_from_priors", "size event regions so their areas match q1 and q2 (true/false)"},
  };
  return keys;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  auto& f = c.field;
  const auto set_lambda = [&](int which, double v) {
    constexpr double unset = std::numeric_limits<double>::quiet_NaN();
    auto current = c.lambda_override.value_or(std::pair{unset, unset});
    (which == 1 ? current.first : current.second) = v;
    c.lambda_override = current;
  };

  if (key == "width") f.width = parse_double(key, value);
  else if (key == "height") f.height = parse_double(key, value);
  else if (key == "sensors") f.sensor_count = parse_int(key, value);
  else if (key == "event1") f.event1_region = parse_rectangle(key, value);
  else if (key == "event2") f.event2_region = parse_rectangle(key, value);
  else if (key == "n") f.neighborhood_size = parse_int(key, value);
  else if (key == "k") f.quorum = parse_int(key, value);
  else if (key == "exclude_self") f.exclude_self = parse_bool(key, value);
  else if (key == "seed") {
    const long long s = parse_integer(key, value);
    if (s < 0) throw ConfigError("seed: must be non-negative");
    f.seed = static_cast<std::uint64_t>(s);
  }
  else if (key == "m0") c.means[0] = parse_double(key, value);
  else if (key == "m1") c.means[1] = parse_double(key, value);
  else if (key == "m2") c.means[2] = parse_double(key, value);
  else if (key == "means") c.means = parse_tuple<3>(key, value);
  else if (key == "q0") c.priors[0] = parse_double(key, value);
  else if (key == "q1") c.priors[1] = parse_double(key, value);
  else if (key == "q2") c.priors[2] = parse_double(key, value);
  else if (key == "priors") c.priors = parse_tuple<3>(key, value);
  else if (key == "pf") {
    c.fault_probability = parse_double(key, value);
    c.alphas.reset();
  }
  else if (key == "alphas") {
    c.alphas = parse_tuple<6>(key, value);
    c.fault_probability = total(*c.alphas);
  }
  else if (key == "fault_mode") {
    if (value == "forced-change") c.fault_mode = FaultMode::ForcedChange;
    else if (value == "alpha-table") c.fault_mode = FaultMode::AlphaTable;
    else throw ConfigError("fault_mode: expected forced-change or alpha-table, got '" +
                           std::string(value) + "'");
  }
  else if (key == "repetitions") c.repetitions = parse_int(key, value);
  else if (key == "output_dir") {
    if (value.empty()) throw ConfigError("output_dir: must not be empty");
    c.output_dir = std::filesystem::path(std::string(value));
  }
  else if (key == "lambda1") set_lambda(1, parse_double(key, value));
  else if (key == "lambda2") set_lambda(2, parse_double(key, value));
  else if (key == "grid_min") c.optimizer.log_lower = parse_double(key, value);
  else if (key == "grid_max") c.optimizer.log_upper = parse_double(key, value);
  else if (key == "grid_points") c.optimizer.grid_points = parse_int(key, value);
  else if (key == "max_evaluations") c.optimizer.max_refine_evaluations = parse_int(key, value);
  else if (key == "regions_from_priors") c.regions_from_priors = parse_bool(key, value);
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void parse_config(std::istream& in, ExperimentConfig& config, std::string_view source) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    try {
      apply_setting(config, trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  ExperimentConfig config = default_config();
  parse_config(in, config, path.string());
  return config;
}

FieldConfig ExperimentConfig::field_config() const {
  FieldConfig f = field;
  if (!regions_from_priors) return f;
  const double s1 = std::sqrt(priors[1]);
  const double s2 = std::sqrt(priors[2]);
  if (!(s1 > 0.0) || !(s2 > 0.0)) {
    throw ConfigError("regions_from_priors needs q1 > 0 and q2 > 0");
  }
  if (s1 + s2 > 1.0 + 1e-12) {
    throw ConfigError("regions_from_priors: corner regions for q1 and q2 would overlap");
  }
  f.event1_region = Rectangle(0.0, 0.0, f.width * s1, f.height * s1);
  f.event2_region = Rectangle(f.width * (1.0 - s2), f.height * (1.0 - s2), f.width, f.height);
  return f;
}

SignalModel ExperimentConfig::model() const { return {means[0], means[1], means[2]}; }

Priors ExperimentConfig::prior_probabilities() const { return {priors[0], priors[1], priors[2]}; }

FusionParams ExperimentConfig::fusion() const {
  return {field.neighborhood_size, field.quorum};
}

FaultModel ExperimentConfig::fault_model() const {
  return alphas ? FaultModel(*alphas) : FaultModel::uniform(fault_probability);
}

bool ExperimentConfig::has_faults() const {
  return fault_probability > 0.0 || (alphas && total(*alphas) > 0.0);
}

std::optional<FaultInjection> ExperimentConfig::fault_injection() const {
  if (!has_faults()) return std::nullopt;
  return FaultInjection{fault_model(), fault_probability, fault_mode};
}

void ExperimentConfig::validate() const {
  const auto wrap = [](auto&& check) {
    try {
      check();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };
  wrap([&] { field_config().validate(); });
  wrap([&] { (void)model(); });
  wrap([&] { (void)prior_probabilities(); });
  wrap([&] { (void)fusion(); });
  if (!(fault_probability >= 0.0 && fault_probability <= 1.0)) {
    throw ConfigError("pf must lie in [0, 1]");
  }
  wrap([&] { (void)fault_model(); });
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (lambda_override) {
    const auto [l1, l2] = *lambda_override;
    if (std::isnan(l1) || std::isnan(l2)) {
      throw ConfigError("lambda1 and lambda2 must be given together");
    }
    wrap([&] { (void)LambdaThresholds(l1, l2); });
  }
  if (!(optimizer.log_lower < optimizer.log_upper)) {
    throw ConfigError("grid_min must be below grid_max");
  }
  if (optimizer.grid_points < 2) throw ConfigError("grid_points must be >= 2");
  if (optimizer.max_refine_evaluations < 0) throw ConfigError("max_evaluations must be >= 0");
}

}  // namespace dualdetect
