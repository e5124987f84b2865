#include <gtest/gtest.h>

#include <vector>

#include "seqx/event.hpp"

using namespace seqx;

TEST(SensorGeometry, RejectsEmptyDimensions) {
  EXPECT_THROW(SensorGeometry(0, 10), std::invalid_argument);
  EXPECT_THROW(SensorGeometry(10, 0), std::invalid_argument);
  EXPECT_THROW(SensorGeometry(70000, 10), std::invalid_argument);
}

TEST(SensorGeometry, CoversCommonSensorSizes) {
  for (auto [w, h] : std::vector<std::pair<int, int>>{{128, 128}, {240, 180}, {346, 260}, {768, 640}}) {
    SensorGeometry g(w, h);
    EXPECT_EQ(g.pixel_count(), static_cast<std::uint64_t>(w) * h);
    EXPECT_TRUE(g.contains(Event{0, static_cast<std::uint16_t>(w - 1), static_cast<std::uint16_t>(h - 1)}));
    EXPECT_FALSE(g.contains(Event{0, static_cast<std::uint16_t>(w), 0}));
  }
}

TEST(ValidateStream, EmptyStreamIsValid) {
  const auto r = validate_stream({}, SensorGeometry(128, 128));
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.checked, 0u);
}

TEST(ValidateStream, TimestampDecreaseReportedAtIndex) {
  const std::vector<Event> s{{5, 10, 10, Polarity::On}, {3, 1, 1, Polarity::Off}};
  const auto r = validate_stream(s, SensorGeometry(128, 128));
  ASSERT_FALSE(r.valid());
  EXPECT_EQ(*r.first_violation, 1u);
  EXPECT_EQ(r.kind, Violation::TimestampDecrease);
}

TEST(ValidateStream, OutOfBoundsReportedAtIndex) {
  const std::vector<Event> s{{1, 128, 0, Polarity::On}};
  const auto r = validate_stream(s, SensorGeometry(128, 128));
  ASSERT_FALSE(r.valid());
  EXPECT_EQ(*r.first_violation, 0u);
  EXPECT_EQ(r.kind, Violation::OutOfBounds);
}

TEST(ValidateStream, EqualTimestampsAllowed) {
  const std::vector<Event> s{{7, 1, 1, Polarity::On}, {7, 2, 2, Polarity::On}, {7, 3, 3, Polarity::Off}};
  const auto r = validate_stream(s, SensorGeometry(4, 4));
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.checked, 3u);
}
