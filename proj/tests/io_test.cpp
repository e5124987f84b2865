#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "seqx/io.hpp"

using namespace seqx;

namespace {

std::string to_binary(const SensorGeometry& g, const std::vector<Event>& ev) {
  std::ostringstream os(std::ios::binary);
  write_binary(g, ev, os);
  return os.str();
}

}  // namespace

TEST(TextFormat, SingleEvent) {
  std::istringstream in("128 128\n1000,10,20,1\n");
  const auto s = read_text(in);
  EXPECT_EQ(s.geometry, SensorGeometry(128, 128));
  ASSERT_EQ(s.events.size(), 1u);
  EXPECT_EQ(s.events[0], (Event{1000, 10, 20, Polarity::On}));
}

TEST(TextFormat, HeaderOnlyIsEmptyStream) {
  std::istringstream in("128 128\n");
  EXPECT_TRUE(read_text(in).events.empty());
}

TEST(TextFormat, RangeErrorNamesLine) {
  std::istringstream in("128 128\n1000,200,20,1\n");
  try {
    read_text(in);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.location(), 2u);
  }
}

TEST(TextFormat, MalformedLines) {
  for (const char* body : {"1,2,3\n", "1,2,3,4\n", "1,2,3,1,5\n", "a,2,3,1\n", "1,,3,1\n", "-1,2,3,0\n"}) {
    std::istringstream in(std::string("16 16\n0,0,0,0\n") + body);
    try {
      read_text(in);
      FAIL() << "accepted " << body;
    } catch (const FormatError& e) {
      EXPECT_EQ(e.location(), 3u) << body;
    }
  }
}

TEST(TextFormat, MissingHeader) {
  std::istringstream empty("");
  EXPECT_THROW(read_text(empty), FormatError);
  std::istringstream bad("1000,10,20,1\n");
  EXPECT_THROW(read_text(bad), FormatError);
}

TEST(TextFormat, WriteLineCounts) {
  const SensorGeometry g(32, 32);
  std::ostringstream empty;
  write_text(g, {}, empty);
  EXPECT_EQ(empty.str(), "32 32\n");

  const std::vector<Event> ev{{1, 1, 1, Polarity::On}, {2, 2, 2, Polarity::Off}, {3, 3, 3, Polarity::On}};
  std::ostringstream os;
  write_text(g, ev, os);
  EXPECT_EQ(os.str(), "32 32\n1,1,1,1\n2,2,2,0\n3,3,3,1\n");
}

TEST(BinaryFormat, ExactBytes) {
  const auto bytes = to_binary(SensorGeometry(0x0102, 0x0304), {{0x1122334455667788ull, 5, 6, Polarity::On}});
  const std::string expected(
      "EVN1\x02\x01\x04\x03\x01\x00\x00\x00\x00\x00\x00\x00"
      "\x88\x77\x66\x55\x44\x33\x22\x11\x05\x00\x06\x00\x01",
      29);
  EXPECT_EQ(bytes, expected);
}

TEST(BinaryFormat, EmptyStream) {
  std::istringstream in(to_binary(SensorGeometry(64, 48), {}), std::ios::binary);
  const auto s = read_binary(in);
  EXPECT_EQ(s.geometry, SensorGeometry(64, 48));
  EXPECT_TRUE(s.events.empty());
}

TEST(BinaryFormat, BadMagic) {
  auto bytes = to_binary(SensorGeometry(8, 8), {});
  bytes[3] = '2';
  std::istringstream in(bytes, std::ios::binary);
  EXPECT_THROW(read_binary(in), FormatError);
}

TEST(BinaryFormat, TruncatedRecordNamesIndex) {
  std::vector<Event> ev{{1, 1, 1, Polarity::On}, {2, 2, 2, Polarity::On}, {3, 3, 3, Polarity::On}};
  auto bytes = to_binary(SensorGeometry(8, 8), ev);
  bytes.resize(bytes.size() - 5);  // cut inside record 2
  std::istringstream in(bytes, std::ios::binary);
  try {
    read_binary(in);
    FAIL() << "expected truncation error";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.location(), 2u);
    EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos);
  }
}

TEST(BinaryFormat, TrailingBytesRejected) {
  auto bytes = to_binary(SensorGeometry(8, 8), {{1, 1, 1, Polarity::On}});
  bytes.push_back('\0');
  std::istringstream in(bytes, std::ios::binary);
  EXPECT_THROW(read_binary(in), FormatError);
}

TEST(Labels, Parse) {
  std::istringstream in("1\n0\n1\n");
  EXPECT_EQ(read_labels(in, 3), (std::vector<Label>{Label::Real, Label::Noise, Label::Real}));
  std::istringstream empty("");
  EXPECT_TRUE(read_labels(empty, 0).empty());
}

TEST(Labels, InvalidCharacterNamesLine) {
  std::istringstream in("1\n2\n");
  try {
    read_labels(in, 2);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.location(), 2u);
  }
}

TEST(Labels, CountMismatch) {
  std::istringstream in("1\n0\n");
  EXPECT_THROW(read_labels(in, 3), FormatError);
}

TEST(RoundTrip, RandomStreamsBothFormats) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::uint32_t>(1 + rng() % 800);
    const auto n = static_cast<std::uint32_t>(1 + rng() % 700);
    const SensorGeometry g(m, n);
    auto ev = oracle::random_stream(rng, m, n, rng() % 60, 1u << 20);
    if (trial % 7 == 0 && !ev.empty()) ev.back().t = ~0ull - 1;

    std::stringstream text;
    write_text(g, ev, text);
    const auto back_text = read_text(text);
    EXPECT_EQ(back_text.geometry, g);
    EXPECT_EQ(back_text.events, ev);

    const auto bytes = to_binary(g, ev);
    EXPECT_EQ(bytes.size(), binary_size(ev.size()));
    std::istringstream bin(bytes, std::ios::binary);
    const auto back_bin = read_binary(bin);
    EXPECT_EQ(back_bin.geometry, g);
    EXPECT_EQ(back_bin.events, ev);
  }
}
