#include "dualdetect/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace dualdetect {

Rectangle::Rectangle(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw std::invalid_argument("rectangle requires x_min < x_max and y_min < y_max");
  }
}

void FieldConfig::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("field width and height must be positive");
  }
  if (sensor_count < 1) throw std::invalid_argument("sensor_count must be >= 1");
  const Rectangle field(0.0, 0.0, width, height);
  if (!field.contains(event1_region)) {
    throw std::invalid_argument("event1 region must lie inside the field");
  }
  if (!field.contains(event2_region)) {
    throw std::invalid_argument("event2 region must lie inside the field");
  }
  if (event1_region.overlaps(event2_region)) {
    throw std::invalid_argument("event regions must be disjoint");
  }
  const int available = exclude_self ? sensor_count - 1 : sensor_count;
  if (neighborhood_size < 1 || neighborhood_size > available) {
    throw std::invalid_argument("neighbourhood size n must be in 1.." + std::to_string(available));
  }
  if (quorum < 1 || quorum > neighborhood_size) {
    throw std::invalid_argument("quorum k must satisfy 1 <= k <= n");
  }
}

Hypothesis truth_at(const FieldConfig& config, Point p) noexcept {
  if (config.event1_region.contains(p)) return Hypothesis::Event1;
  if (config.event2_region.contains(p)) return Hypothesis::Event2;
  return Hypothesis::Normal;
}

std::vector<std::vector<std::size_t>> nearest_neighbors(const std::vector<Point>& positions,
                                                        int n, bool exclude_self) {
  const std::size_t count = positions.size();
  const std::size_t want = static_cast<std::size_t>(n);
  if (count == 0 || n < 1 || want > (exclude_self ? count - 1 : count)) {
    throw std::invalid_argument("not enough sensors for the requested neighbourhood size");
  }

  std::vector<std::vector<std::size_t>> result(count);
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ranked.clear();
    for (std::size_t j = 0; j < count; ++j) {
      if (exclude_self && j == i) continue;
      const double dx = positions[j].x - positions[i].x;
      const double dy = positions[j].y - positions[i].y;
      ranked.emplace_back(dx * dx + dy * dy, j);
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(want),
                      ranked.end());
    auto& list = result[i];
    list.reserve(want);
    for (std::size_t r = 0; r < want; ++r) list.push_back(ranked[r].second);
  }
  return result;
}

SensorField generate_field(const FieldConfig& config, RandomSource& rng) {
  config.validate();
  std::uniform_real_distribution<double> ux(0.0, config.width);
  std::uniform_real_distribution<double> uy(0.0, config.height);

  SensorField field;
  const auto count = static_cast<std::size_t>(config.sensor_count);
  field.positions.reserve(count);
  field.truth.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    field.positions.push_back({x, y});
    field.truth.push_back(truth_at(config, field.positions.back()));
  }
  field.neighbors =
      nearest_neighbors(field.positions, config.neighborhood_size, config.exclude_self);
  return field;
}

}  // namespace dualdetect
