#include "dualdetect/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace dualdetect {

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer.data(), ptr);
}

std::vector<ScatterRow> scatter_rows(const RunResult& run, ScatterLayer layer) {
  std::vector<ScatterRow> rows;
  rows.reserve(run.records.size());
  for (const auto& r : run.records) {
    const Hypothesis decision =
        layer == ScatterLayer::Local ? r.reported_decision : r.final_decision;
    rows.push_back({r.position.x, r.position.y, to_decision(r.truth), to_decision(decision),
                    r.faulty});
  }
  return rows;
}

std::string format_scatter(const std::vector<ScatterRow>& rows) {
  std::string out(kScatterHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.x);
    out += ',';
    out += format_number(r.y);
    out += ',';
    out += std::to_string(r.truth);
    out += ',';
    out += std::to_string(r.decision);
    out += ',';
    out += r.faulty ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::vector<ScatterRow> parse_scatter(std::string_view text) {
  std::vector<ScatterRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kScatterHeader) throw IoError("unexpected scatter header: " + std::string(line));
      header = false;
      continue;
    }
    std::array<std::string_view, 5> fields;
    std::size_t start = 0;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto comma = line.find(',', start);
      if ((comma == std::string_view::npos) != (f == fields.size() - 1)) {
        throw IoError("malformed scatter row: " + std::string(line));
      }
      fields[f] = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      start = comma + 1;
    }
    ScatterRow row;
    int faulty = 0;
    const auto num = [&](std::string_view s, auto& out) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw IoError("malformed scatter field '" + std::string(s) + "'");
      }
    };
    num(fields[0], row.x);
    num(fields[1], row.y);
    num(fields[2], row.truth);
    num(fields[3], row.decision);
    num(fields[4], faulty);
    row.faulty = faulty != 0;
    rows.push_back(row);
  }
  return rows;
}

std::string format_summary(const SummaryEntries& entries) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : entries) {
    out += key;
    out += ',';
    out += value;
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                    ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dualdetect
