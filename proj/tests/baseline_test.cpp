#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "seqx/baseline.hpp"
#include "seqx/filter.hpp"

using namespace seqx;

namespace {

template <typename F>
std::vector<Label> run(F f, const std::vector<Event>& ev) {
  return verdicts(f, ev);
}

Event ev(std::uint64_t t, std::uint16_t x, std::uint16_t y) { return {t, x, y, Polarity::On}; }

}  // namespace

TEST(Bs1, FirstEventIsNoise) {
  Bs1Filter f(SensorGeometry(16, 16), 1000);
  EXPECT_EQ(f.check(ev(0, 5, 5)), Label::Noise);
}

TEST(Bs1, NeighbourWithinDtSupports) {
  const std::vector<Event> s{ev(0, 5, 5), ev(100, 6, 5)};
  const auto expected = oracle::bs1(s, 1000);
  ASSERT_EQ(expected, (std::vector<Label>{Label::Noise, Label::Real}));
  EXPECT_EQ(run(Bs1Filter(SensorGeometry(16, 16), 1000), s), expected);
}

TEST(Bs1, NeighbourOutsideDtDoesNotSupport) {
  const std::vector<Event> s{ev(0, 5, 5), ev(2000, 6, 5)};
  const auto expected = oracle::bs1(s, 1000);
  ASSERT_EQ(expected[1], Label::Noise);
  EXPECT_EQ(run(Bs1Filter(SensorGeometry(16, 16), 1000), s), expected);
}

TEST(Bs1, StrictInequalityAtDt) {
  const std::vector<Event> s{ev(0, 5, 5), ev(1000, 6, 5), ev(1999, 5, 5)};
  EXPECT_EQ(run(Bs1Filter(SensorGeometry(16, 16), 1000), s),
            (std::vector<Label>{Label::Noise, Label::Noise, Label::Real}));
}

TEST(Bs1, IsolatedHotPixelNeverSelfSupports) {
  Bs1Filter f(SensorGeometry(16, 16), 1000);
  for (std::uint64_t t = 0; t < 10; ++t) EXPECT_EQ(f.check(ev(t, 7, 7)), Label::Noise);
}

TEST(Bs1, WritesNeighboursNotOwnCell) {
  Bs1Filter f(SensorGeometry(4, 4), 1000);
  f.check(ev(42, 0, 0));
  EXPECT_EQ(f.cell(0, 0), kEmptyCell);
  EXPECT_EQ(f.cell(1, 0), 42u);
  EXPECT_EQ(f.cell(1, 1), 42u);
  EXPECT_EQ(f.cell(2, 2), kEmptyCell);
}

TEST(Bs1, CraftedFourEventStreamMatchesOracle) {
  const std::vector<Event> s{ev(0, 3, 3), ev(50, 4, 4), ev(60, 9, 9), ev(3000, 4, 3)};
  const auto expected = oracle::bs1(s, 1000);
  EXPECT_EQ(expected, (std::vector<Label>{Label::Noise, Label::Real, Label::Noise, Label::Noise}));
  EXPECT_EQ(run(Bs1Filter(SensorGeometry(16, 16), 1000), s), expected);
}

TEST(Bs1, OutOfBoundsThrows) {
  Bs1Filter f(SensorGeometry(8, 8), 1000);
  EXPECT_THROW(f.check(ev(0, 8, 0)), std::out_of_range);
}

TEST(Bs2, FirstEventIsNoise) {
  Bs2Filter f(SensorGeometry(16, 16), 2, 1000);
  EXPECT_EQ(f.check(ev(0, 0, 0)), Label::Noise);
}

TEST(Bs2, SameGroupSupports) {
  const std::vector<Event> s{ev(0, 0, 0), ev(10, 1, 1)};
  ASSERT_EQ(oracle::bs2(s, 2, 1000)[1], Label::Real);
  EXPECT_EQ(run(Bs2Filter(SensorGeometry(16, 16), 2, 1000), s), oracle::bs2(s, 2, 1000));
}

TEST(Bs2, NonAdjacentGroupDoesNotSupport) {
  const std::vector<Event> s{ev(0, 0, 0), ev(10, 5, 5)};
  ASSERT_EQ(oracle::bs2(s, 2, 1000)[1], Label::Noise);
  EXPECT_EQ(run(Bs2Filter(SensorGeometry(16, 16), 2, 1000), s), oracle::bs2(s, 2, 1000));
}

TEST(Bs2, StateSizeIsCeilGroups) {
  Bs2Filter f(SensorGeometry(17, 10), 4, 1000);
  EXPECT_EQ(f.groups_x(), 5u);
  EXPECT_EQ(f.groups_y(), 3u);
  EXPECT_EQ(f.state_cells(), 15u);
  EXPECT_THROW(Bs2Filter(SensorGeometry(4, 4), 0, 1000), std::invalid_argument);
}

TEST(Bs3, FirstEventIsNoise) {
  Bs3Filter f(SensorGeometry(16, 16), 1000);
  EXPECT_EQ(f.check(ev(0, 5, 5)), Label::Noise);
}

TEST(Bs3, RowNeighbourSupports) {
  const std::vector<Event> s{ev(0, 5, 5), ev(10, 6, 5)};
  ASSERT_EQ(oracle::bs3(s, 1000)[1], Label::Real);
  EXPECT_EQ(run(Bs3Filter(SensorGeometry(16, 16), 1000), s), oracle::bs3(s, 1000));
}

TEST(Bs3, DistantRowEventDoesNotSupport) {
  const std::vector<Event> s{ev(0, 5, 5), ev(10, 9, 5)};
  ASSERT_EQ(oracle::bs3(s, 1000)[1], Label::Noise);
  EXPECT_EQ(run(Bs3Filter(SensorGeometry(16, 16), 1000), s), oracle::bs3(s, 1000));
}

TEST(Bs3, StateSizeIsRowsPlusColumns) {
  EXPECT_EQ(Bs3Filter(SensorGeometry(346, 260), 1000).state_cells(), 346u + 260u);
}

TEST(RunFilter, EmptyStream) {
  PassAllFilter f;
  EXPECT_TRUE(run_filter(f, std::vector<Event>{}).empty());
}

TEST(RunFilter, PassAllLabelsEverythingRealInOrder) {
  std::mt19937_64 rng(3);
  const auto s = oracle::random_stream(rng, 32, 32, 50, 100);
  PassAllFilter f;
  const auto out = run_filter(f, s);
  ASSERT_EQ(out.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(out[i].event, s[i]);
    EXPECT_EQ(out[i].label, Label::Real);
  }
  EXPECT_EQ(passed_events(out), s);
}

TEST(RunFilter, FilteredStreamIsOrderedSubsequence) {
  std::mt19937_64 rng(4);
  const auto s = oracle::clustered_stream(rng, 16, 16, 200, 300);
  Bs1Filter f(SensorGeometry(16, 16), 500);
  const auto out = run_filter(f, s);
  const auto kept = passed_events(out);
  std::size_t j = 0;
  for (const auto& e : s) {
    if (j < kept.size() && kept[j] == e) ++j;
  }
  EXPECT_EQ(j, kept.size());
}

TEST(OracleEquivalence, BaselinesOnRandomStreams) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = static_cast<std::uint32_t>(1 + rng() % 16);
    const auto n = static_cast<std::uint32_t>(1 + rng() % 16);
    const SensorGeometry g(m, n);
    const auto s = trial % 2 ? oracle::random_stream(rng, m, n, rng() % 201, 400)
                             : oracle::clustered_stream(rng, m, n, rng() % 201, 400);
    const std::uint64_t dt = 1 + rng() % 3000;
    const auto sub = static_cast<std::uint32_t>(1 + rng() % 4);
    EXPECT_EQ(run(Bs1Filter(g, dt), s), oracle::bs1(s, dt));
    EXPECT_EQ(run(Bs2Filter(g, sub, dt), s), oracle::bs2(s, sub, dt));
    EXPECT_EQ(run(Bs3Filter(g, dt), s), oracle::bs3(s, dt));
  }
}
