#pragma once

// Event stream serialization.
//
// Text format:
//   line 1      "WIDTH HEIGHT"
//   lines 2..   "t,x,y,p"   (p: 1 = ON, 0 = OFF), LF endings
//
// Binary format (all little-endian):
//   "EVN1" | width u16 | height u16 | event_count u64 | records...
//   record: t u64 | x u16 | y u16 | p u8            (13 bytes)
//
// Label sidecar: one '1' (REAL) or '0' (NOISE) per line.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqx/event.hpp"

namespace seqx {

/// Malformed input. `location()` is a 1-based line number for text inputs
/// and a 0-based record index for binary inputs.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t location)
      : std::runtime_error(what), location_(location) {}
  [[nodiscard]] std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

struct EventStream {
  SensorGeometry geometry;
  std::vector<Event> events;
};

inline constexpr std::array<std::uint8_t, 4> kBinaryMagic{0x45, 0x56, 0x4E, 0x31};
inline constexpr std::size_t kBinaryHeaderBytes = 16;
inline constexpr std::size_t kBinaryRecordBytes = 13;

[[nodiscard]] constexpr std::uint64_t binary_size(std::uint64_t event_count) noexcept {
  return kBinaryHeaderBytes + kBinaryRecordBytes * event_count;
}

namespace detail {

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::string line_msg(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

inline void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  }
  os.write(buf.data(), buf.size());
}

template <typename T>
T get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return static_cast<T>(v);
}

inline void check_sink(const std::ostream& os) {
  if (!os) throw std::runtime_error("write to output stream failed");
}

}  // namespace detail

inline EventStream read_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("line 1: missing header", 1);
  detail::chomp(line);

  const auto space = line.find(' ');
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  if (space == std::string::npos ||
      !detail::parse_uint(std::string_view(line).substr(0, space), width) ||
      !detail::parse_uint(std::string_view(line).substr(space + 1), height) || width == 0 ||
      height == 0 || width > 65535 || height > 65535) {
    throw FormatError("line 1: malformed header, expected \"WIDTH HEIGHT\"", 1);
  }
  EventStream stream{SensorGeometry(width, height), {}};

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    detail::chomp(line);
    const std::string_view sv(line);
    std::array<std::string_view, 4> fields;
    std::size_t start = 0;
    bool well_formed = true;
    for (std::size_t n = 0; n < 3 && well_formed; ++n) {
      const auto comma = sv.find(',', start);
      if (comma == std::string_view::npos) {
        well_formed = false;
      } else {
        fields[n] = sv.substr(start, comma - start);
        start = comma + 1;
      }
    }
    if (well_formed) {
      fields[3] = sv.substr(start);
      well_formed = fields[3].find(',') == std::string_view::npos;
    }
    if (!well_formed) {
      throw FormatError(detail::line_msg(lineno, "expected 4 comma-separated fields"), lineno);
    }

    Event e;
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    unsigned p = 0;
    if (!detail::parse_uint(fields[0], e.t) || !detail::parse_uint(fields[1], x) ||
        !detail::parse_uint(fields[2], y) || !detail::parse_uint(fields[3], p) || p > 1) {
      throw FormatError(detail::line_msg(lineno, "malformed event \"" + line + "\""), lineno);
    }
    if (x >= width || y >= height) {
      throw FormatError(detail::line_msg(lineno, "coordinate out of declared range"), lineno);
    }
    e.x = static_cast<std::uint16_t>(x);
    e.y = static_cast<std::uint16_t>(y);
    e.p = p == 1 ? Polarity::On : Polarity::Off;
    stream.events.push_back(e);
  }
  return stream;
}

inline void write_text(const SensorGeometry& geom, std::span<const Event> events,
                       std::ostream& out) {
  out << geom.width() << ' ' << geom.height() << '\n';
  std::string buf;
  for (const auto& e : events) {
    buf.clear();
    buf += std::to_string(e.t);
    buf += ',';
    buf += std::to_string(e.x);
    buf += ',';
    buf += std::to_string(e.y);
    buf += e.p == Polarity::On ? ",1\n" : ",0\n";
    out << buf;
  }
  out.flush();
  detail::check_sink(out);
}

inline void write_binary(const SensorGeometry& geom, std::span<const Event> events,
                         std::ostream& out) {
  out.write(reinterpret_cast<const char*>(kBinaryMagic.data()), kBinaryMagic.size());
  detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(geom.width()));
  detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(geom.height()));
  detail::put_le<std::uint64_t>(out, events.size());
  for (const auto& e : events) {
    detail::put_le<std::uint64_t>(out, e.t);
    detail::put_le<std::uint16_t>(out, e.x);
    detail::put_le<std::uint16_t>(out, e.y);
    detail::put_le<std::uint8_t>(out, e.p == Polarity::On ? 1 : 0);
  }
  out.flush();
  detail::check_sink(out);
}

inline EventStream read_binary(std::istream& in) {
  std::array<std::uint8_t, kBinaryHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() < 4 ||
      !std::equal(kBinaryMagic.begin(), kBinaryMagic.end(), header.begin())) {
    throw FormatError("bad magic, expected \"EVN1\"", 0);
  }
  if (static_cast<std::size_t>(in.gcount()) != header.size()) {
    throw FormatError("truncated header", 0);
  }
  const auto width = detail::get_le<std::uint16_t>(header.data() + 4);
  const auto height = detail::get_le<std::uint16_t>(header.data() + 6);
  const auto count = detail::get_le<std::uint64_t>(header.data() + 8);
  if (width == 0 || height == 0) throw FormatError("zero sensor dimension in header", 0);

  EventStream stream{SensorGeometry(width, height), {}};
  std::array<std::uint8_t, kBinaryRecordBytes> rec{};
  for (std::uint64_t i = 0; i < count; ++i) {
    in.read(reinterpret_cast<char*>(rec.data()), rec.size());
    if (static_cast<std::size_t>(in.gcount()) != rec.size()) {
      throw FormatError("truncated at record " + std::to_string(i) + " of " +
                            std::to_string(count),
                        i);
    }
    Event e;
    e.t = detail::get_le<std::uint64_t>(rec.data());
    e.x = detail::get_le<std::uint16_t>(rec.data() + 8);
    e.y = detail::get_le<std::uint16_t>(rec.data() + 10);
    const auto p = rec[12];
    if (p > 1) throw FormatError("invalid polarity byte in record " + std::to_string(i), i);
    if (e.x >= width || e.y >= height) {
      throw FormatError("record " + std::to_string(i) + " outside declared geometry", i);
    }
    e.p = p == 1 ? Polarity::On : Polarity::Off;
    stream.events.push_back(e);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("payload longer than declared count " + std::to_string(count), count);
  }
  return stream;
}

inline std::vector<Label> read_labels(std::istream& in, std::size_t expected) {
  std::vector<Label> labels;
  labels.reserve(expected);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::chomp(line);
    if (line == "1") {
      labels.push_back(Label::Real);
    } else if (line == "0") {
      labels.push_back(Label::Noise);
    } else {
      throw FormatError(detail::line_msg(lineno, "invalid label \"" + line + "\""), lineno);
    }
  }
  if (labels.size() != expected) {
    throw FormatError("label count " + std::to_string(labels.size()) + " does not match " +
                          std::to_string(expected) + " events",
                      lineno);
  }
  return labels;
}

inline void write_labels(std::span<const Label> labels, std::ostream& out) {
  for (auto l : labels) out << (l == Label::Real ? "1\n" : "0\n");
  out.flush();
  detail::check_sink(out);
}

// File helpers. Binary is chosen for ".evn" and ".bin" extensions.

enum class StreamFormat { Text, Binary };

inline StreamFormat format_for_path(const std::string& path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".evn") || ends_with(".bin") ? StreamFormat::Binary : StreamFormat::Text;
}

inline EventStream load_stream(const std::string& path, StreamFormat fmt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return fmt == StreamFormat::Binary ? read_binary(in) : read_text(in);
}

inline EventStream load_stream(const std::string& path) {
  return load_stream(path, format_for_path(path));
}

inline void save_stream(const std::string& path, const SensorGeometry& geom,
                        std::span<const Event> events, StreamFormat fmt) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create " + path);
  if (fmt == StreamFormat::Binary) {
    write_binary(geom, events, out);
  } else {
    write_text(geom, events, out);
  }
}

inline void save_stream(const std::string& path, const SensorGeometry& geom,
                        std::span<const Event> events) {
  save_stream(path, geom, events, format_for_path(path));
}

inline std::vector<Label> load_labels(const std::string& path, std::size_t expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_labels(in, expected);
}

inline void save_labels(const std::string& path, std::span<const Label> labels) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create " + path);
  write_labels(labels, out);
}

}  // namespace seqx
