// Sensor field geometry: uniform sensor placement, event regions, and
// n-nearest neighbourhoods.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dualdetect/signal_model.hpp"

namespace dualdetect {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
class Rectangle {
 public:
  Rectangle(double x_min, double y_min, double x_max, double y_max);

  [[nodiscard]] double x_min() const noexcept { return x_min_; }
  [[nodiscard]] double y_min() const noexcept { return y_min_; }
  [[nodiscard]] double x_max() const noexcept { return x_max_; }
  [[nodiscard]] double y_max() const noexcept { return y_max_; }

  [[nodiscard]] bool contains(Point p) const noexcept {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }
  [[nodiscard]] bool contains(const Rectangle& r) const noexcept {
    return r.x_min_ >= x_min_ && r.x_max_ <= x_max_ && r.y_min_ >= y_min_ && r.y_max_ <= y_max_;
  }
  /// Overlap with positive area; rectangles sharing only an edge or corner
  /// do not overlap.
  [[nodiscard]] bool overlaps(const Rectangle& r) const noexcept {
    return r.x_min_ < x_max_ && x_min_ < r.x_max_ && r.y_min_ < y_max_ && y_min_ < r.y_max_;
  }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;

 private:
  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

struct FieldConfig {
  double width = 20.0;
  double height = 20.0;
  int sensor_count = 200;
  Rectangle event1_region{0.0, 0.0, 10.0, 10.0};
  Rectangle event2_region{12.0, 12.0, 20.0, 20.0};
  int neighborhood_size = 5;  ///< n
  int quorum = 3;             ///< k
  std::uint64_t seed = 1;
  /// Neighbourhood is the n nearest other sensors instead of n nearest
  /// including the sensor itself.
  bool exclude_self = false;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct SensorField {
  std::vector<Point> positions;
  std::vector<Hypothesis> truth;
  /// neighbors[i] lists the sensors whose reports feed sensor i's fusion,
  /// ordered by distance then index.
  std::vector<std::vector<std::size_t>> neighbors;

  [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }
};

/// Ground truth of a location: Event1/Event2 inside the respective region,
/// Normal elsewhere.
[[nodiscard]] Hypothesis truth_at(const FieldConfig& config, Point p) noexcept;

/// n nearest sensors of every sensor by Euclidean distance, ties by index.
[[nodiscard]] std::vector<std::vector<std::size_t>> nearest_neighbors(
    const std::vector<Point>& positions, int n, bool exclude_self);

/// Positions i.i.d. uniform over [0, width] x [0, height].
[[nodiscard]] SensorField generate_field(const FieldConfig& config, RandomSource& rng);

}  // namespace dualdetect
