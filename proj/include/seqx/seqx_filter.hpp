#pragma once

// SeqXFilter: a spatio-temporal correlation filter whose whole state is the
// pixel coordinates of the X most recent events. Time is implicit in the
// stream order, so no per-pixel timestamp memory is needed.
//
// For each event e_n the filter computes the normalized distance
//
//     D(n, n-j) = |x_n - x_{n-j}| / M + |y_n - y_{n-j}| / N,   j = 1..X
//
// to every event in the window, reduces them with an aggregation function f
// and passes the event iff f(D(n,n-1), ..., D(n,n-X)) < sigma. The new event
// then overwrites the oldest window slot.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqx/event.hpp"

namespace seqx {

enum class AggregationMode { Min, Max, Avg, WeightedAvg };

inline std::string to_string(AggregationMode m) {
  switch (m) {
    case AggregationMode::Min: return "min";
    case AggregationMode::Max: return "max";
    case AggregationMode::Avg: return "avg";
    case AggregationMode::WeightedAvg: return "wavg";
  }
  return "unknown";
}

inline AggregationMode parse_aggregation_mode(const std::string& name) {
  if (name == "min") return AggregationMode::Min;
  if (name == "max") return AggregationMode::Max;
  if (name == "avg") return AggregationMode::Avg;
  if (name == "wavg") return AggregationMode::WeightedAvg;
  throw std::invalid_argument("unknown aggregation \"" + name + "\" (min, max, avg, wavg)");
}

/// Aggregation function with its weights. `weights[j-1]` multiplies the
/// distance to the j-th most recent window event.
struct Aggregation {
  AggregationMode mode = AggregationMode::Min;
  std::vector<double> weights;

  static Aggregation min() { return {AggregationMode::Min, {}}; }
  static Aggregation max() { return {AggregationMode::Max, {}}; }
  static Aggregation avg() { return {AggregationMode::Avg, {}}; }
  static Aggregation weighted(std::vector<double> w) {
    return {AggregationMode::WeightedAvg, std::move(w)};
  }
};

/// Normalized spatial distance, in [0, 2).
inline double spatial_distance(const Event& a, const Event& b, const SensorGeometry& geom) {
  require_in_bounds(a, geom);
  require_in_bounds(b, geom);
  const std::uint64_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const std::uint64_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  // Single rounding: ties with sigma = k / (M*N) resolve as in exact arithmetic.
  const std::uint64_t num = dx * geom.height() + dy * geom.width();
  return static_cast<double>(num) / static_cast<double>(geom.pixel_count());
}

/// Reduces the window distances, ordered most recent first. The weighted
/// average divides by the window length, not by the weight sum.
inline double aggregate(std::span<const double> distances, const Aggregation& agg) {
  if (distances.empty()) throw std::invalid_argument("aggregate over empty distance set");
  const auto n = static_cast<double>(distances.size());
  switch (agg.mode) {
    case AggregationMode::Min: return *std::min_element(distances.begin(), distances.end());
    case AggregationMode::Max: return *std::max_element(distances.begin(), distances.end());
    case AggregationMode::Avg:
      return std::accumulate(distances.begin(), distances.end(), 0.0) / n;
    case AggregationMode::WeightedAvg: {
      if (agg.weights.size() != distances.size()) {
        throw std::invalid_argument("weighted average needs " +
                                    std::to_string(distances.size()) + " weights, got " +
                                    std::to_string(agg.weights.size()));
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < distances.size(); ++j) sum += distances[j] * agg.weights[j];
      return sum / n;
    }
  }
  throw std::logic_error("unhandled aggregation mode");
}

struct SeqXConfig {
  std::size_t window_length = 2;
  double sigma = 0.05;
  Aggregation aggregation = Aggregation::min();
  // Only events judged REAL enter the window. Off by default: every event
  // is written after its check.
  bool update_on_real = false;

  void validate() const {
    if (window_length == 0) throw std::invalid_argument("window length must be >= 1");
    if (window_length > 65535) throw std::invalid_argument("window length too large");
    if (!(sigma > 0.0) || sigma > 2.0) throw std::invalid_argument("sigma must lie in (0, 2]");
    if (aggregation.mode == AggregationMode::WeightedAvg) {
      if (aggregation.weights.size() != window_length) {
        throw std::invalid_argument("weighted average needs exactly X weights");
      }
      for (double w : aggregation.weights) {
        if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
      }
    }
  }
};

/// Sensors with more than this many pixels get the tighter default sigma.
inline constexpr std::uint64_t kLargeSensorPixels = 300000;

inline SeqXConfig default_seqx_config(const SensorGeometry& geom) {
  SeqXConfig cfg;
  cfg.sigma = geom.pixel_count() > kLargeSensorPixels ? 0.005 : 0.05;
  return cfg;
}

/// Window slot: one 16-bit coordinate pair.
struct Coord {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
};
static_assert(sizeof(Coord) * 8 == 32, "a window slot must hold exactly 32 bits of coordinates");

/// Circular store of the X most recent event coordinates. `counter` indexes
/// the oldest slot, which is the next one to be overwritten.
class PastEventWindow {
 public:
  explicit PastEventWindow(std::size_t length) : slots_(length) {
    if (length == 0) throw std::invalid_argument("window length must be >= 1");
  }

  [[nodiscard]] std::size_t length() const noexcept { return slots_.size(); }
  [[nodiscard]] std::size_t filled() const noexcept { return filled_; }
  [[nodiscard]] std::size_t counter() const noexcept { return counter_; }
  [[nodiscard]] bool full() const noexcept { return filled_ == slots_.size(); }
  [[nodiscard]] std::span<const Coord> slots() const noexcept { return slots_; }

  /// j-th most recent entry, j in [1, filled()].
  [[nodiscard]] const Coord& recent(std::size_t j) const noexcept {
    const auto n = slots_.size();
    return slots_[(counter_ + n - j) % n];
  }

  void push(Coord c) noexcept {
    slots_[counter_] = c;
    counter_ = counter_ + 1 == slots_.size() ? 0 : counter_ + 1;
    if (filled_ < slots_.size()) ++filled_;
  }

  /// Bits of coordinate payload; the counter is not included.
  [[nodiscard]] std::size_t payload_bits() const noexcept {
    return slots_.size() * sizeof(Coord) * 8;
  }

 private:
  std::vector<Coord> slots_;
  std::size_t counter_ = 0;
  std::size_t filled_ = 0;
};

/// Storage of the window coordinates in bits.
[[nodiscard]] constexpr std::size_t state_size_bits(std::size_t window_length) noexcept {
  return 32 * window_length;
}
[[nodiscard]] inline std::size_t state_size_bits(const SeqXConfig& cfg) noexcept {
  return state_size_bits(cfg.window_length);
}

/// Reference filter in double-precision arithmetic. Handles every
/// aggregation mode.
class SeqXFilter {
 public:
  SeqXFilter(const SensorGeometry& geom, SeqXConfig cfg)
      : geom_(geom), cfg_(std::move(cfg)), window_(cfg_.window_length) {
    cfg_.validate();
    distances_.resize(cfg_.window_length);
  }

  Label check(const Event& e) {
    require_in_bounds(e, geom_);
    Label verdict = Label::Real;
    if (window_.full()) {
      last_score_ = score(e);
      verdict = last_score_ < cfg_.sigma ? Label::Real : Label::Noise;
    } else {
      last_score_ = std::numeric_limits<double>::quiet_NaN();
    }
    if (verdict == Label::Real || !cfg_.update_on_real) window_.push({e.x, e.y});
    return verdict;
  }

  /// Aggregated distance of `e` against the current window. Requires a full
  /// window.
  [[nodiscard]] double score(const Event& e) const {
    const auto n = window_.length();
    for (std::size_t j = 1; j <= n; ++j) {
      const Coord& c = window_.recent(j);
      distances_[j - 1] = spatial_distance(e, Event{0, c.x, c.y, Polarity::On}, geom_);
    }
    return aggregate(distances_, cfg_.aggregation);
  }

  /// Score of the most recent check; NaN during warm-up.
  [[nodiscard]] double last_score() const noexcept { return last_score_; }
  [[nodiscard]] const PastEventWindow& window() const noexcept { return window_; }
  [[nodiscard]] const SeqXConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] const SensorGeometry& geometry() const noexcept { return geom_; }

 private:
  SensorGeometry geom_;
  SeqXConfig cfg_;
  PastEventWindow window_;
  mutable std::vector<double> distances_;
  double last_score_ = std::numeric_limits<double>::quiet_NaN();
};

/// Integer threshold for the division-free path: floor(sigma * M * N), with
/// products that land within 1e-9 of an integer snapped to it so that
/// decimal sigmas such as 0.0625 on 16x16 scale exactly.
inline std::uint64_t scaled_threshold(double sigma, const SensorGeometry& geom) {
  const double v = sigma * static_cast<double>(geom.pixel_count());
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, v)) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::floor(v));
}

/// True when sigma * M * N is an integer, in which case the scaled path is
/// exactly equivalent to the reference path.
inline bool scaling_is_exact(double sigma, const SensorGeometry& geom) {
  const double v = sigma * static_cast<double>(geom.pixel_count());
  return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, v);
}

/// Division-free MIN filter. Multiplying the distance by M*N turns
/// D < sigma into |dx|*N + |dy|*M < floor(sigma*M*N). When sigma*M*N is not
/// an integer the comparison rejects events whose scaled distance equals the
/// floor, i.e. it can differ from the reference only within one quantum of
/// the threshold.
class ScaledSeqXFilter {
 public:
  ScaledSeqXFilter(const SensorGeometry& geom, SeqXConfig cfg)
      : geom_(geom), cfg_(std::move(cfg)), window_(cfg_.window_length) {
    cfg_.validate();
    if (cfg_.aggregation.mode != AggregationMode::Min) {
      throw std::invalid_argument("the scaled integer path supports MIN aggregation only");
    }
    threshold_ = scaled_threshold(cfg_.sigma, geom_);
  }

  Label check(const Event& e) {
    require_in_bounds(e, geom_);
    Label verdict = Label::Real;
    if (window_.full()) {
      verdict = scaled_score(e) < threshold_ ? Label::Real : Label::Noise;
    }
    if (verdict == Label::Real || !cfg_.update_on_real) window_.push({e.x, e.y});
    return verdict;
  }

  /// min over the window of |dx|*N + |dy|*M.
  [[nodiscard]] std::uint64_t scaled_score(const Event& e) const noexcept {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const Coord& c : window_.slots()) {
      const std::uint64_t dx = e.x > c.x ? e.x - c.x : c.x - e.x;
      const std::uint64_t dy = e.y > c.y ? e.y - c.y : c.y - e.y;
      best = std::min(best, dx * geom_.height() + dy * geom_.width());
    }
    return best;
  }

  [[nodiscard]] std::uint64_t threshold() const noexcept { return threshold_; }
  [[nodiscard]] const PastEventWindow& window() const noexcept { return window_; }

 private:
  SensorGeometry geom_;
  SeqXConfig cfg_;
  PastEventWindow window_;
  std::uint64_t threshold_ = 0;
};

// ---------------------------------------------------------------------------
// Operation counting
//
// The MIN check can be written with one normalization division per window
// slot by putting both axes over the common denominator M*N:
//
//     D = (|dx| * N + |dy| * M) / (M * N)
//
// Per slot that is two coordinate subtractions, one addition and one
// division; the running minimum costs one comparison per slot after the
// first and the threshold test one more. Storing the event is two writes.
// Constant multiplications and absolute values are not counted, nor is the
// counter update (one addition and one wrap).

struct OpCounts {
  std::uint64_t additions = 0;
  std::uint64_t divisions = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t writes = 0;

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// Closed-form per-event cost of a steady-state MIN check.
inline OpCounts op_count(const SeqXConfig& cfg) {
  if (cfg.aggregation.mode != AggregationMode::Min) {
    throw std::invalid_argument("operation count is defined for MIN aggregation");
  }
  const auto x = static_cast<std::uint64_t>(cfg.window_length);
  return {3 * x, x, x, 2};
}

/// Plain arithmetic policy for `min_window_check`.
struct PlainArithmetic {
  static double sub(double a, double b) noexcept { return a - b; }
  static double add(double a, double b) noexcept { return a + b; }
  static double div(double a, double b) noexcept { return a / b; }
  static bool less(double a, double b) noexcept { return a < b; }
  static void write(std::uint16_t& dst, std::uint16_t v) noexcept { dst = v; }
};

/// Arithmetic policy that tallies every counted operation.
struct CountingArithmetic {
  OpCounts counts;

  double sub(double a, double b) noexcept { ++counts.additions; return a - b; }
  double add(double a, double b) noexcept { ++counts.additions; return a + b; }
  double div(double a, double b) noexcept { ++counts.divisions; return a / b; }
  bool less(double a, double b) noexcept { ++counts.comparisons; return a < b; }
  void write(std::uint16_t& dst, std::uint16_t v) noexcept { ++counts.writes; dst = v; }
};

/// Steady-state MIN check over a raw slot array, written against an
/// arithmetic policy. `slots` must hold X entries and `oldest` indexes the
/// slot to overwrite. Returns the verdict and overwrites the oldest slot.
template <typename Arith>
Label min_window_check(std::span<Coord> slots, std::size_t oldest, const Event& e,
                       const SensorGeometry& geom, double sigma, Arith& arith) {
  const double m = geom.width();
  const double n = geom.height();
  const double mn = m * n;
  double best = 0.0;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    const double dx = std::abs(arith.sub(e.x, slots[j].x));
    const double dy = std::abs(arith.sub(e.y, slots[j].y));
    const double d = arith.div(arith.add(dx * n, dy * m), mn);
    if (j == 0 || arith.less(d, best)) best = d;
  }
  const bool real = arith.less(best, sigma);
  arith.write(slots[oldest].x, e.x);
  arith.write(slots[oldest].y, e.y);
  return real ? Label::Real : Label::Noise;
}

/// MIN filter built on `min_window_check`, used to measure per-event
/// operation counts. Warm-up events are written without counting.
template <typename Arith>
class InstrumentedMinFilter {
 public:
  InstrumentedMinFilter(const SensorGeometry& geom, SeqXConfig cfg, Arith arith = {})
      : geom_(geom), cfg_(std::move(cfg)), slots_(cfg_.window_length), arith_(arith) {
    cfg_.validate();
    if (cfg_.aggregation.mode != AggregationMode::Min) {
      throw std::invalid_argument("instrumented path supports MIN aggregation only");
    }
    if (cfg_.update_on_real) {
      throw std::invalid_argument("instrumented path always updates the window");
    }
  }

  Label check(const Event& e) {
    require_in_bounds(e, geom_);
    if (filled_ < slots_.size()) {
      slots_[counter_] = {e.x, e.y};
      advance();
      ++filled_;
      return Label::Real;
    }
    const auto verdict = min_window_check(std::span<Coord>(slots_), counter_, e, geom_,
                                          cfg_.sigma, arith_);
    advance();
    ++steady_events_;
    return verdict;
  }

  [[nodiscard]] const Arith& arithmetic() const noexcept { return arith_; }
  [[nodiscard]] std::uint64_t steady_events() const noexcept { return steady_events_; }

 private:
  void advance() noexcept { counter_ = counter_ + 1 == slots_.size() ? 0 : counter_ + 1; }

  SensorGeometry geom_;
  SeqXConfig cfg_;
  std::vector<Coord> slots_;
  std::size_t counter_ = 0;
  std::size_t filled_ = 0;
  std::uint64_t steady_events_ = 0;
  Arith arith_;
};

}  // namespace seqx
