#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqx {

enum class Polarity : std::uint8_t { Off = 0, On = 1 };

enum class Label : std::uint8_t { Noise = 0, Real = 1 };

/// One address-event: timestamp in microseconds, pixel column/row, polarity.
struct Event {
  std::uint64_t t = 0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  Polarity p = Polarity::On;

  friend bool operator==(const Event&, const Event&) = default;
};

struct LabeledEvent {
  Event event;
  Label label = Label::Noise;

  friend bool operator==(const LabeledEvent&, const LabeledEvent&) = default;
};

/// Output dimensions of the sensor: width M (columns) by height N (rows).
class SensorGeometry {
 public:
  SensorGeometry(std::uint32_t width, std::uint32_t height) : width_(width), height_(height) {
    if (width == 0 || height == 0) {
      throw std::invalid_argument("sensor geometry must be at least 1x1");
    }
    // Coordinates and header dimensions are stored in 16 bits.
    if (width > 65535 || height > 65535) {
      throw std::invalid_argument("sensor geometry exceeds 16-bit coordinate range");
    }
  }

  [[nodiscard]] std::uint32_t width() const noexcept { return width_; }
  [[nodiscard]] std::uint32_t height() const noexcept { return height_; }
  [[nodiscard]] std::uint64_t pixel_count() const noexcept {
    return std::uint64_t{width_} * height_;
  }
  [[nodiscard]] bool contains(const Event& e) const noexcept {
    return e.x < width_ && e.y < height_;
  }

  friend bool operator==(const SensorGeometry&, const SensorGeometry&) = default;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
};

inline void require_in_bounds(const Event& e, const SensorGeometry& geom) {
  if (!geom.contains(e)) {
    throw std::out_of_range("event at (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                            ") outside " + std::to_string(geom.width()) + "x" +
                            std::to_string(geom.height()) + " sensor");
  }
}

enum class Violation { None, OutOfBounds, TimestampDecrease };

struct ValidationReport {
  std::size_t checked = 0;
  std::optional<std::size_t> first_violation;
  Violation kind = Violation::None;

  [[nodiscard]] bool valid() const noexcept { return !first_violation.has_value(); }
};

/// Checks bounds and non-decreasing timestamps. Stops at the first violation;
/// `checked` counts the events inspected including the offending one.
inline ValidationReport validate_stream(std::span<const Event> events, const SensorGeometry& geom) {
  ValidationReport report;
  for (std::size_t i = 0; i < events.size(); ++i) {
    ++report.checked;
    if (!geom.contains(events[i])) {
      report.first_violation = i;
      report.kind = Violation::OutOfBounds;
      return report;
    }
    if (i > 0 && events[i].t < events[i - 1].t) {
      report.first_violation = i;
      report.kind = Violation::TimestampDecrease;
      return report;
    }
  }
  return report;
}

inline std::string to_string(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::OutOfBounds: return "coordinate out of bounds";
    case Violation::TimestampDecrease: return "timestamp decrease";
  }
  return "unknown";
}

inline std::vector<Event> strip_labels(std::span<const LabeledEvent> labeled) {
  std::vector<Event> out;
  out.reserve(labeled.size());
  for (const auto& le : labeled) out.push_back(le.event);
  return out;
}

inline std::vector<Label> labels_of(std::span<const LabeledEvent> labeled) {
  std::vector<Label> out;
  out.reserve(labeled.size());
  for (const auto& le : labeled) out.push_back(le.label);
  return out;
}

}  // namespace seqx
