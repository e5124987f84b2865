#pragma once

// Timestamp-memory nearest-neighbour (NNb) filters. An event at (x, y, t)
// is supported when a stored neighbourhood timestamp ts satisfies
// t - ts < dT (strict). Cells start EMPTY and never support an event until
// written.
//
//   Bs1Filter  one cell per pixel. Each event writes its timestamp into its
//              8 neighbours (not its own cell) and is checked against its
//              own cell, so a pixel never supports itself.
//   Bs2Filter  one cell per s x s group holding the group's latest event;
//              checked against the own group and the 8 adjacent groups.
//   Bs3Filter  one cell per row and per column holding the latest event in
//              that line together with its cross-axis coordinate.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "seqx/event.hpp"

namespace seqx {

/// Reserved cell value; the timestamp 2^64-1 is never treated as valid data.
inline constexpr std::uint64_t kEmptyCell = std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline bool supports(std::uint64_t stored, std::uint64_t t, std::uint64_t dt) noexcept {
  if (stored == kEmptyCell) return false;
  // A cell stamped later than the event (out-of-order input) counts as gap 0.
  const std::uint64_t gap = t >= stored ? t - stored : 0;
  return gap < dt;
}

}  // namespace detail

class Bs1Filter {
 public:
  Bs1Filter(const SensorGeometry& geom, std::uint64_t dt_us)
      : geom_(geom), dt_(dt_us), cells_(geom.pixel_count(), kEmptyCell) {}

  Label check(const Event& e) {
    require_in_bounds(e, geom_);
    const auto w = static_cast<std::int64_t>(geom_.width());
    const auto h = static_cast<std::int64_t>(geom_.height());
    const Label verdict = detail::supports(cells_[index(e.x, e.y)], e.t, dt_) ? Label::Real
                                                                               : Label::Noise;
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const auto nx = e.x + dx;
        const auto ny = e.y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        cells_[index(nx, ny)] = e.t;
      }
    }
    return verdict;
  }

  [[nodiscard]] std::size_t state_cells() const noexcept { return cells_.size(); }
  [[nodiscard]] std::uint64_t cell(std::uint32_t x, std::uint32_t y) const {
    return cells_.at(index(x, y));
  }

 private:
  [[nodiscard]] std::size_t index(std::int64_t x, std::int64_t y) const noexcept {
    return static_cast<std::size_t>(y) * geom_.width() + static_cast<std::size_t>(x);
  }

  SensorGeometry geom_;
  std::uint64_t dt_;
  std::vector<std::uint64_t> cells_;
};

class Bs2Filter {
 public:
  Bs2Filter(const SensorGeometry& geom, std::uint32_t subsample, std::uint64_t dt_us)
      : geom_(geom), s_(subsample), dt_(dt_us) {
    if (subsample == 0) throw std::invalid_argument("sub-sampling factor must be >= 1");
    groups_x_ = (geom.width() + s_ - 1) / s_;
    groups_y_ = (geom.height() + s_ - 1) / s_;
    cells_.assign(std::size_t{groups_x_} * groups_y_, kEmptyCell);
  }

  Label check(const Event& e) {
    require_in_bounds(e, geom_);
    const std::int64_t gx = e.x / s_;
    const std::int64_t gy = e.y / s_;
    bool real = false;
    for (std::int64_t dy = -1; dy <= 1 && !real; ++dy) {
      for (std::int64_t dx = -1; dx <= 1 && !real; ++dx) {
        const auto nx = gx + dx;
        const auto ny = gy + dy;
        if (nx < 0 || ny < 0 || nx >= groups_x_ || ny >= groups_y_) continue;
        real = detail::supports(cells_[static_cast<std::size_t>(ny * groups_x_ + nx)], e.t, dt_);
      }
    }
    cells_[static_cast<std::size_t>(gy * groups_x_ + gx)] = e.t;
    return real ? Label::Real : Label::Noise;
  }

  [[nodiscard]] std::size_t state_cells() const noexcept { return cells_.size(); }
  [[nodiscard]] std::uint32_t groups_x() const noexcept { return groups_x_; }
  [[nodiscard]] std::uint32_t groups_y() const noexcept { return groups_y_; }

 private:
  SensorGeometry geom_;
  std::uint32_t s_;
  std::uint64_t dt_;
  std::uint32_t groups_x_ = 0;
  std::uint32_t groups_y_ = 0;
  std::vector<std::uint64_t> cells_;
};

class Bs3Filter {
 public:
  /// Latest event of a row (cross = its column) or column (cross = its row).
  struct LineCell {
    std::uint64_t ts = kEmptyCell;
    Polarity p = Polarity::Off;
    std::uint16_t cross = 0;
  };

  Bs3Filter(const SensorGeometry& geom, std::uint64_t dt_us)
      : geom_(geom), dt_(dt_us), rows_(geom.height()), cols_(geom.width()) {}

  Label check(const Event& e) {
    require_in_bounds(e, geom_);
    auto near = [](std::uint16_t a, std::uint16_t b) { return (a > b ? a - b : b - a) <= 1; };
    const LineCell& row = rows_[e.y];
    const LineCell& col = cols_[e.x];
    const bool real = (detail::supports(row.ts, e.t, dt_) && near(row.cross, e.x)) ||
                      (detail::supports(col.ts, e.t, dt_) && near(col.cross, e.y));
    rows_[e.y] = {e.t, e.p, e.x};
    cols_[e.x] = {e.t, e.p, e.y};
    return real ? Label::Real : Label::Noise;
  }

  [[nodiscard]] std::size_t state_cells() const noexcept { return rows_.size() + cols_.size(); }

 private:
  SensorGeometry geom_;
  std::uint64_t dt_;
  std::vector<LineCell> rows_;
  std::vector<LineCell> cols_;
};

}  // namespace seqx
