#pragma once

// Labeled synthetic scenes: a small object moving along a trajectory emits
// REAL events scattered around its position, while background activity
// emits NOISE events uniformly over the sensor. Both are homogeneous Poisson
// processes.
//
// Randomness comes from std::mt19937_64 (whose output sequence is fixed by
// the standard) seeded with `seed`, drawn through these transforms only:
//
//   uniform  u = (next() >> 11) * 2^-53                  in [0, 1)
//   gap      -log(1 - u) * 1e6 / rate                    microseconds
//   index    floor(u * n)                                in [0, n)
//
// Signal events are drawn first for the whole duration, then noise events,
// then both are merged by timestamp (signal first on ties).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "seqx/event.hpp"

namespace seqx {

struct PendulumTrajectory {
  double center_x = 64.0;
  double center_y = 64.0;
  double amplitude = 40.0;       // horizontal half-swing, pixels
  double period_us = 2'000'000;  // full swing period
};

struct LinearTrajectory {
  double start_x = 0.0;
  double start_y = 0.0;
  double velocity_x = 0.0;  // pixels per second
  double velocity_y = 0.0;
};

using Trajectory = std::variant<PendulumTrajectory, LinearTrajectory>;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Object position at time t. The pendulum bob rises by amplitude/4 at the
/// ends of its swing.
inline Point position_at(const Trajectory& traj, double t_us) {
  if (const auto* p = std::get_if<PendulumTrajectory>(&traj)) {
    const double phase = 2.0 * std::numbers::pi * t_us / p->period_us;
    const double s = std::sin(phase);
    return {p->center_x + p->amplitude * s, p->center_y - 0.25 * p->amplitude * s * s};
  }
  const auto& l = std::get<LinearTrajectory>(traj);
  return {l.start_x + l.velocity_x * t_us * 1e-6, l.start_y + l.velocity_y * t_us * 1e-6};
}

/// ON while the object moves towards +x.
inline Polarity motion_polarity(const Trajectory& traj, double t_us) {
  if (const auto* p = std::get_if<PendulumTrajectory>(&traj)) {
    return std::cos(2.0 * std::numbers::pi * t_us / p->period_us) >= 0.0 ? Polarity::On
                                                                          : Polarity::Off;
  }
  return std::get<LinearTrajectory>(traj).velocity_x >= 0.0 ? Polarity::On : Polarity::Off;
}

struct SceneConfig {
  SensorGeometry geom{128, 128};
  std::uint64_t duration_us = 5'000'000;
  double signal_rate = 20'000.0;  // events per second from the object
  double noise_rate = 20'000.0;   // events per second over the whole array
  Trajectory trajectory = PendulumTrajectory{};
  std::uint32_t cluster_radius = 1;
  std::uint64_t seed = 1;
};

namespace detail {

class SceneRng {
 public:
  explicit SceneRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double gap_us(double rate_per_s) { return -std::log(1.0 - uniform()) * 1e6 / rate_per_s; }
  std::uint64_t index(std::uint64_t n) {
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(uniform() * static_cast<double>(n)),
                                   n - 1);
  }

 private:
  std::mt19937_64 engine_;
};

inline bool cluster_fits(const Point& c, std::uint32_t r, const SensorGeometry& geom) {
  const double cx = std::round(c.x);
  const double cy = std::round(c.y);
  return cx - r >= 0.0 && cy - r >= 0.0 && cx + r <= geom.width() - 1.0 &&
         cy + r <= geom.height() - 1.0;
}

}  // namespace detail

inline void validate_scene(const SceneConfig& cfg) {
  if (!(cfg.signal_rate >= 0.0) || !(cfg.noise_rate >= 0.0)) {
    throw std::invalid_argument("event rates must be >= 0");
  }
  if (const auto* p = std::get_if<PendulumTrajectory>(&cfg.trajectory); p && !(p->period_us > 0)) {
    throw std::invalid_argument("pendulum period must be > 0");
  }
  if (cfg.signal_rate == 0.0) return;
  // Sample densely; generation re-checks every emitted signal event.
  const std::uint64_t steps = 4096;
  for (std::uint64_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(cfg.duration_us) * static_cast<double>(i) / steps;
    if (!detail::cluster_fits(position_at(cfg.trajectory, t), cfg.cluster_radius, cfg.geom)) {
      throw std::invalid_argument("trajectory leaves the sensor at t=" +
                                  std::to_string(static_cast<std::uint64_t>(t)) + "us");
    }
  }
}

/// Generates the scene. Deterministic for a given config.
inline std::vector<LabeledEvent> generate(const SceneConfig& cfg) {
  validate_scene(cfg);
  detail::SceneRng rng(cfg.seed);
  const auto duration = static_cast<double>(cfg.duration_us);

  std::vector<LabeledEvent> signal;
  if (cfg.signal_rate > 0.0) {
    const auto span = 2 * std::uint64_t{cfg.cluster_radius} + 1;
    for (double t = rng.gap_us(cfg.signal_rate); t < duration; t += rng.gap_us(cfg.signal_rate)) {
      const auto ts = static_cast<std::uint64_t>(t);
      const Point c = position_at(cfg.trajectory, static_cast<double>(ts));
      if (!detail::cluster_fits(c, cfg.cluster_radius, cfg.geom)) {
        throw std::invalid_argument("trajectory leaves the sensor at t=" + std::to_string(ts) +
                                    "us");
      }
      const auto ox = static_cast<std::int64_t>(rng.index(span)) - cfg.cluster_radius;
      const auto oy = static_cast<std::int64_t>(rng.index(span)) - cfg.cluster_radius;
      Event e;
      e.t = ts;
      e.x = static_cast<std::uint16_t>(static_cast<std::int64_t>(std::round(c.x)) + ox);
      e.y = static_cast<std::uint16_t>(static_cast<std::int64_t>(std::round(c.y)) + oy);
      e.p = motion_polarity(cfg.trajectory, static_cast<double>(ts));
      signal.push_back({e, Label::Real});
    }
  }

  std::vector<LabeledEvent> noise;
  if (cfg.noise_rate > 0.0) {
    for (double t = rng.gap_us(cfg.noise_rate); t < duration; t += rng.gap_us(cfg.noise_rate)) {
      Event e;
      e.t = static_cast<std::uint64_t>(t);
      e.x = static_cast<std::uint16_t>(rng.index(cfg.geom.width()));
      e.y = static_cast<std::uint16_t>(rng.index(cfg.geom.height()));
      e.p = rng.index(2) == 1 ? Polarity::On : Polarity::Off;
      noise.push_back({e, Label::Noise});
    }
  }

  std::vector<LabeledEvent> merged;
  merged.reserve(signal.size() + noise.size());
  std::merge(signal.begin(), signal.end(), noise.begin(), noise.end(), std::back_inserter(merged),
             [](const LabeledEvent& a, const LabeledEvent& b) { return a.event.t < b.event.t; });
  return merged;
}

struct ConfusionRates {
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t true_negatives = 0;
  std::uint64_t false_negatives = 0;
  // Rates with an empty denominator are reported as 0.
  double true_positive_rate = 0.0;
  double false_positive_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Confusion-matrix rates with REAL as the positive class.
inline ConfusionRates score(std::span<const LabeledEvent> truth, std::span<const Label> verdicts) {
  if (truth.size() != verdicts.size()) {
    throw std::invalid_argument("truth has " + std::to_string(truth.size()) +
                                " events but " + std::to_string(verdicts.size()) +
                                " verdicts were given");
  }
  ConfusionRates r;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i].label == Label::Real;
    const bool predicted = verdicts[i] == Label::Real;
    if (actual && predicted) ++r.true_positives;
    if (!actual && predicted) ++r.false_positives;
    if (!actual && !predicted) ++r.true_negatives;
    if (actual && !predicted) ++r.false_negatives;
  }
  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  r.true_positive_rate = ratio(r.true_positives, r.true_positives + r.false_negatives);
  r.recall = r.true_positive_rate;
  r.false_positive_rate = ratio(r.false_positives, r.false_positives + r.true_negatives);
  r.precision = ratio(r.true_positives, r.true_positives + r.false_positives);
  return r;
}

}  // namespace seqx
