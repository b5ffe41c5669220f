// CSV writers and readers for run artifacts.
//
//   scatter: x,y,truth,decision,faulty      (labels 0/1/-1, faulty 0/1)
//   sweep:   param,ld_bf,fd_bf,ld_af,fd_af,lambda1,lambda2
//   summary: key,value
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dualdetect/signal_model.hpp"
#include "dualdetect/simulator.hpp"

namespace dualdetect {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kScatterHeader = "x,y,truth,decision,faulty";
inline constexpr std::string_view kSweepHeader = "param,ld_bf,fd_bf,ld_af,fd_af,lambda1,lambda2";

/// Shortest representation that round-trips, independent of locale.
[[nodiscard]] std::string format_number(double value);

enum class ScatterLayer { Local, Final };

struct ScatterRow {
  double x = 0.0;
  double y = 0.0;
  int truth = 0;
  int decision = 0;
  bool faulty = false;
};

/// Local layer uses the reported decisions; final layer the fused ones.
[[nodiscard]] std::vector<ScatterRow> scatter_rows(const RunResult& run, ScatterLayer layer);

[[nodiscard]] std::string format_scatter(const std::vector<ScatterRow>& rows);
[[nodiscard]] std::vector<ScatterRow> parse_scatter(std::string_view text);

using SummaryEntries = std::vector<std::pair<std::string, std::string>>;
[[nodiscard]] std::string format_summary(const SummaryEntries& entries);

/// Writes `content` to `path`, creating parent directories. Throws IoError
/// naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view content);
[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

}  // namespace dualdetect
