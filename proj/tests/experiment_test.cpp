#include "dualdetect/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "dualdetect/csv.hpp"

using namespace dualdetect;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dualdetect_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::map<std::string, std::string> read_summary(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::map<std::string, std::string> out;
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "key,value");
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    out[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return out;
}

double error_percent(const std::vector<ScatterRow>& rows) {
  std::size_t wrong = 0;
  for (const auto& r : rows) wrong += r.decision != r.truth;
  return 100.0 * (static_cast<double>(wrong) / static_cast<double>(rows.size()));
}

}  // namespace

TEST(MakeStream, SeedAndLabelBothMatter) {
  auto a = make_stream(1, "pf=0.12");
  auto b = make_stream(1, "pf=0.12");
  auto c = make_stream(1, "pf=0.24");
  auto d = make_stream(2, "pf=0.12");
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  EXPECT_NE(first, d());
}

TEST(RunSingle, OverrideIsUsedVerbatim) {
  auto config = default_config();
  config.output_dir = scratch("override");
  config.lambda_override = std::pair{1.0, 1.0};
  config.fault_probability = 0.12;
  const auto report = run_single(config);
  EXPECT_TRUE(report.before.overridden);
  ASSERT_TRUE(report.after);
  EXPECT_TRUE(report.after->overridden);
  const auto summary = read_summary(config.output_dir / "summary.csv");
  EXPECT_EQ(summary.at("lambda1"), "1");
  EXPECT_EQ(summary.at("lambda2"), "1");
  EXPECT_EQ(summary.at("lambda1_af"), "1");
  EXPECT_EQ(summary.at("faulty_count"), "24");
  fs::remove_all(config.output_dir);
}

TEST(RunSingle, SummaryMatchesScatterFiles) {
  auto config = default_config();
  config.output_dir = scratch("summary");
  config.fault_probability = 0.24;
  const auto report = run_single(config);
  EXPECT_EQ(report.written.size(), 5u);
  const auto summary = read_summary(config.output_dir / "summary.csv");
  const auto rows = [&](const char* name) {
    return parse_scatter(read_text_file(config.output_dir / name));
  };
  EXPECT_NEAR(std::stod(summary.at("ld_bf")), error_percent(rows("local_bf.csv")), 1e-9);
  EXPECT_NEAR(std::stod(summary.at("fd_bf")), error_percent(rows("final_bf.csv")), 1e-9);
  EXPECT_NEAR(std::stod(summary.at("ld_af")), error_percent(rows("local_af.csv")), 1e-9);
  EXPECT_NEAR(std::stod(summary.at("fd_af")), error_percent(rows("final_af.csv")), 1e-9);
  std::size_t flagged = 0;
  for (const auto& r : rows("local_af.csv")) flagged += r.faulty;
  EXPECT_EQ(std::to_string(flagged), summary.at("faulty_count"));
  fs::remove_all(config.output_dir);
}

TEST(RunSingle, RerunsAreByteIdentical) {
  auto config = default_config();
  config.fault_probability = 0.12;
  config.output_dir = scratch("rerun_a");
  (void)run_single(config);
  const auto first = config.output_dir;
  config.output_dir = scratch("rerun_b");
  (void)run_single(config);
  for (const char* name : {"local_bf.csv", "final_bf.csv", "local_af.csv", "final_af.csv",
                           "summary.csv"}) {
    EXPECT_EQ(read_text_file(first / name), read_text_file(config.output_dir / name)) << name;
  }
  fs::remove_all(first);
  fs::remove_all(config.output_dir);
}

TEST(RunSingle, FaultFreeWritesOnlyBeforeFiles) {
  auto config = default_config();
  config.output_dir = scratch("fault_free");
  const auto report = run_single(config);
  EXPECT_EQ(report.written.size(), 3u);
  EXPECT_FALSE(fs::exists(config.output_dir / "local_af.csv"));
  EXPECT_TRUE(report.converged());
  fs::remove_all(config.output_dir);
}

TEST(RunSingle, UnwritableOutputNamesThePath) {
  const auto blocker = scratch("blocker");
  write_text_file(blocker, "not a directory");
  auto config = default_config();
  config.output_dir = blocker / "sub";
  try {
    (void)run_single(config);
    FAIL() << "no exception";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(blocker.string()), std::string::npos) << e.what();
  }
  fs::remove_all(blocker);
}

TEST(Sweep, CellsDoNotDependOnOrder) {
  auto config = default_config();
  config.repetitions = 3;
  const auto forward = run_sweep(config, SweepParameter::FaultProbability, {"0.12", "0.24"});
  const auto backward = run_sweep(config, SweepParameter::FaultProbability, {"0.24", "0.12"});
  ASSERT_EQ(forward.rows.size(), 2u);
  EXPECT_EQ(forward.rows[0].value, backward.rows[1].value);
  EXPECT_EQ(forward.rows[0].fd_af, backward.rows[1].fd_af);
  EXPECT_EQ(forward.rows[1].ld_af, backward.rows[0].ld_af);
  EXPECT_EQ(forward.rows[1].lambda1, backward.rows[0].lambda1);
}

TEST(Sweep, ParameterNamesAndValues) {
  for (const char* name : {"pf", "nk", "sensors", "means", "priors"}) {
    EXPECT_EQ(sweep_parameter_name(parse_sweep_parameter(name)), name);
  }
  EXPECT_THROW((void)parse_sweep_parameter("width"), ConfigError);
  auto config = default_config();
  apply_sweep_value(config, SweepParameter::NeighbourhoodQuorum, "9:5");
  EXPECT_EQ(config.fusion(), FusionParams(9, 5));
  apply_sweep_value(config, SweepParameter::Priors, "0.5:0.25:0.25");
  EXPECT_TRUE(config.regions_from_priors);
  EXPECT_THROW(apply_sweep_value(config, SweepParameter::Means, "0:3"), ConfigError);
}

TEST(Sweep, FormatHasHeaderAndOneLinePerValue) {
  auto config = default_config();
  config.repetitions = 2;
  const auto s = run_sweep(config, SweepParameter::SensorCount, {"100", "200"});
  const auto text = format_sweep(s);
  EXPECT_EQ(text.rfind(std::string(kSweepHeader) + "\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_TRUE(s.converged());
  // Without faults the after-fault columns repeat the fault-free ones.
  EXPECT_EQ(s.rows[0].ld_af, s.rows[0].ld_bf);
}
