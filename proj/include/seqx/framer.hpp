#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <future>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "seqx/event.hpp"

namespace seqx {

inline constexpr std::uint8_t kPixelOn = 255;
inline constexpr std::uint8_t kPixelOff = 0;

/// Binary image, row-major with the top row first. Every pixel is 0 or 255.
class BinaryFrame {
 public:
  explicit BinaryFrame(const SensorGeometry& geom)
      : geom_(geom), pixels_(geom.pixel_count(), kPixelOff) {}

  [[nodiscard]] const SensorGeometry& geometry() const noexcept { return geom_; }
  [[nodiscard]] std::uint32_t width() const noexcept { return geom_.width(); }
  [[nodiscard]] std::uint32_t height() const noexcept { return geom_.height(); }
  [[nodiscard]] std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  [[nodiscard]] std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return pixels_.at(std::size_t{y} * geom_.width() + x);
  }
  void activate(std::uint32_t x, std::uint32_t y) {
    pixels_.at(std::size_t{y} * geom_.width() + x) = kPixelOn;
  }
  void set(std::uint32_t x, std::uint32_t y, bool on) {
    pixels_.at(std::size_t{y} * geom_.width() + x) = on ? kPixelOn : kPixelOff;
  }
  [[nodiscard]] std::size_t active_count() const noexcept {
    std::size_t n = 0;
    for (auto v : pixels_) n += v == kPixelOn;
    return n;
  }

  friend bool operator==(const BinaryFrame&, const BinaryFrame&) = default;

 private:
  SensorGeometry geom_;
  std::vector<std::uint8_t> pixels_;
};

/// Default events-per-frame bundle sizes: 1k, 3k and 5k, ten times larger on
/// sensors above 300k pixels.
inline std::array<std::size_t, 3> default_bundle_sizes(const SensorGeometry& geom) {
  const std::size_t scale = geom.pixel_count() > 300000 ? 10 : 1;
  return {1000 * scale, 3000 * scale, 5000 * scale};
}

struct FrameOptions {
  bool keep_partial = false;  // emit the trailing partial bundle as a frame
  bool parallel = false;      // build frames on several threads
};

/// One frame per `count` consecutive events; a frame activates every pixel
/// hit by its bundle. A trailing partial bundle is dropped unless
/// `keep_partial` is set.
inline std::vector<BinaryFrame> accumulate(std::span<const Event> events,
                                           const SensorGeometry& geom, std::size_t count,
                                           FrameOptions opts = {}) {
  if (count == 0) throw std::invalid_argument("events per frame must be >= 1");
  for (const auto& e : events) require_in_bounds(e, geom);
  const bool partial = opts.keep_partial && events.size() % count != 0;
  const std::size_t n = events.size() / count + (partial ? 1 : 0);
  std::vector<BinaryFrame> frames(n, BinaryFrame(geom));

  auto build = [&](std::size_t first, std::size_t last) {
    for (std::size_t k = first; k < last; ++k) {
      const std::size_t end = std::min((k + 1) * count, events.size());
      for (std::size_t i = k * count; i < end; ++i) frames[k].activate(events[i].x, events[i].y);
    }
  };
  const std::size_t threads =
      opts.parallel ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n)
                    : 1;
  if (threads <= 1) {
    build(0, n);
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t b = 0; b < n; b += chunk) {
      jobs.push_back(std::async(std::launch::async, build, b, std::min(n, b + chunk)));
    }
    for (auto& j : jobs) j.get();
  }
  return frames;
}

/// Binary PGM (P5, maxval 255).
inline void write_pgm(const BinaryFrame& frame, std::ostream& out) {
  out << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  const auto px = frame.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  out.flush();
  if (!out) throw std::runtime_error("write to PGM sink failed");
}

/// Reads a P5 PGM with maxval 255. Values other than 0 and 255 are rejected.
inline BinaryFrame read_pgm(std::istream& in) {
  auto next_token = [&in]() {
    std::string tok;
    char c = 0;
    while (in.get(c)) {
      if (c == '#') {
        std::string skip;
        std::getline(in, skip);
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        tok.push_back(c);
        break;
      }
    }
    while (in.get(c) && !std::isspace(static_cast<unsigned char>(c))) tok.push_back(c);
    return tok;
  };
  if (next_token() != "P5") throw std::runtime_error("not a binary PGM (P5)");
  std::uint32_t w = 0;
  std::uint32_t h = 0;
  std::uint32_t maxval = 0;
  try {
    w = static_cast<std::uint32_t>(std::stoul(next_token()));
    h = static_cast<std::uint32_t>(std::stoul(next_token()));
    maxval = static_cast<std::uint32_t>(std::stoul(next_token()));
  } catch (const std::exception&) {
    throw std::runtime_error("malformed PGM header");
  }
  if (maxval != 255) throw std::runtime_error("PGM maxval must be 255");
  BinaryFrame frame(SensorGeometry(w, h));
  std::vector<char> raw(frame.geometry().pixel_count());
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw std::runtime_error("truncated PGM payload");
  }
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      const auto v = static_cast<std::uint8_t>(raw[std::size_t{y} * w + x]);
      if (v != kPixelOn && v != kPixelOff) throw std::runtime_error("PGM pixel is not 0 or 255");
      frame.set(x, y, v == kPixelOn);
    }
  }
  return frame;
}

}  // namespace seqx
