#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "seqx/metrics.hpp"

using namespace seqx;

namespace {

BinaryFrame filled(const SensorGeometry& g, bool on) {
  BinaryFrame f(g);
  for (std::uint32_t y = 0; y < g.height(); ++y)
    for (std::uint32_t x = 0; x < g.width(); ++x) f.set(x, y, on);
  return f;
}

BinaryFrame random_frame(std::mt19937_64& rng, const SensorGeometry& g, double density) {
  std::bernoulli_distribution on(density);
  BinaryFrame f(g);
  for (std::uint32_t y = 0; y < g.height(); ++y)
    for (std::uint32_t x = 0; x < g.width(); ++x) f.set(x, y, on(rng));
  return f;
}

// Direct 2-D evaluation of every window, no separability.
double ssim_direct(const BinaryFrame& a, const BinaryFrame& b) {
  const auto g = gaussian_taps();
  const std::size_t ow = a.width() - 10;
  const std::size_t oh = a.height() - 10;
  double total = 0;
  for (std::size_t y0 = 0; y0 < oh; ++y0) {
    for (std::size_t x0 = 0; x0 < ow; ++x0) {
      double ma = 0, mb = 0;
      for (std::size_t j = 0; j < 11; ++j)
        for (std::size_t i = 0; i < 11; ++i) {
          ma += g[i] * g[j] * a.at(x0 + i, y0 + j);
          mb += g[i] * g[j] * b.at(x0 + i, y0 + j);
        }
      double va = 0, vb = 0, cv = 0;
      for (std::size_t j = 0; j < 11; ++j)
        for (std::size_t i = 0; i < 11; ++i) {
          const double da = a.at(x0 + i, y0 + j) - ma;
          const double db = b.at(x0 + i, y0 + j) - mb;
          va += g[i] * g[j] * da * da;
          vb += g[i] * g[j] * db * db;
          cv += g[i] * g[j] * da * db;
        }
      const double c1 = 6.5025, c2 = 58.5225;
      total += (2 * ma * mb + c1) * (2 * cv + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
  }
  return total / static_cast<double>(ow * oh);
}

}  // namespace

TEST(Constants, Canonical) {
  EXPECT_DOUBLE_EQ(kSsimC1, 6.5025);
  EXPECT_DOUBLE_EQ(kSsimC2, 58.5225);
  const auto g = gaussian_taps();
  double sum = 0;
  for (double v : g) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(g[0], g[10]);
  EXPECT_GT(g[5], g[4]);
}

TEST(Psnr, ClosedForms) {
  const SensorGeometry g(100, 100);
  EXPECT_TRUE(std::isinf(psnr(filled(g, true), filled(g, true))));
  EXPECT_EQ(psnr(filled(g, false), filled(g, true)), 0.0);
  auto one = filled(g, false);
  one.activate(42, 17);
  EXPECT_NEAR(psnr(filled(g, false), one), 40.0, 1e-9);
}

TEST(Psnr, DecreasesWithHammingDistance) {
  const SensorGeometry g(20, 20);
  const auto base = filled(g, false);
  auto other = base;
  double prev = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < 50; ++i) {
    other.activate(i % 20, i / 20);
    const double p = psnr(base, other);
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(Psnr, GeometryMismatch) {
  EXPECT_THROW(psnr(BinaryFrame(SensorGeometry(4, 4)), BinaryFrame(SensorGeometry(4, 5))),
               GeometryMismatch);
}

TEST(Ssim, SelfSimilarity) {
  std::mt19937_64 rng(1);
  const SensorGeometry g(40, 30);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_frame(rng, g, 0.1 * i);
    EXPECT_NEAR(ssim(f, f), 1.0, 1e-12);
  }
  EXPECT_NEAR(ssim(filled(g, false), filled(g, false)), 1.0, 1e-12);
}

TEST(Ssim, BlackVersusWhite) {
  const SensorGeometry g(16, 16);
  EXPECT_NEAR(ssim(filled(g, false), filled(g, true)), kSsimC1 / (255.0 * 255.0 + kSsimC1), 1e-12);
}

TEST(Ssim, MatchesDirectEvaluation) {
  std::mt19937_64 rng(2);
  const SensorGeometry g(23, 17);
  for (int i = 0; i < 5; ++i) {
    const auto a = random_frame(rng, g, 0.2);
    const auto b = random_frame(rng, g, 0.3);
    EXPECT_NEAR(ssim(a, b), ssim_direct(a, b), 1e-12);
  }
}

TEST(Ssim, Symmetric) {
  std::mt19937_64 rng(3);
  const SensorGeometry g(32, 32);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_frame(rng, g, 0.15);
    const auto b = random_frame(rng, g, 0.25);
    EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
    EXPECT_EQ(psnr(a, b), psnr(b, a));
  }
}

TEST(Ssim, RejectsSmallFrames) {
  const SensorGeometry g(10, 20);
  EXPECT_THROW(ssim(BinaryFrame(g), BinaryFrame(g)), std::invalid_argument);
}

TEST(ComparePipelines, IdenticalSequences) {
  std::mt19937_64 rng(4);
  const SensorGeometry g(16, 16);
  std::vector<BinaryFrame> a{random_frame(rng, g, 0.1), random_frame(rng, g, 0.4)};
  const auto r = compare_pipelines(a, a);
  EXPECT_EQ(r.identical_frames, 2u);
  EXPECT_TRUE(std::isinf(r.mean_psnr));
  EXPECT_NEAR(r.mean_ssim, 1.0, 1e-12);
}

TEST(ComparePipelines, MeansOverFiniteEntries) {
  const SensorGeometry g(100, 100);
  auto one = filled(g, false);
  one.activate(0, 0);
  std::vector<BinaryFrame> ref{filled(g, false), filled(g, false), filled(g, false)};
  std::vector<BinaryFrame> test{one, filled(g, true), filled(g, false)};
  const auto r = compare_pipelines(ref, test);
  ASSERT_EQ(r.per_frame.size(), 3u);
  EXPECT_EQ(r.identical_frames, 1u);
  EXPECT_NEAR(r.mean_psnr, 20.0, 1e-9);
  const double expected_ssim = (r.per_frame[0].ssim + kSsimC1 / (255.0 * 255.0 + kSsimC1) + 1.0) / 3.0;
  EXPECT_NEAR(r.mean_ssim, expected_ssim, 1e-12);
  const auto p = compare_pipelines(ref, test, true);
  EXPECT_EQ(p.mean_psnr, r.mean_psnr);
  EXPECT_EQ(p.mean_ssim, r.mean_ssim);
}

TEST(ComparePipelines, CountMismatch) {
  const SensorGeometry g(16, 16);
  std::vector<BinaryFrame> a(2, BinaryFrame(g));
  std::vector<BinaryFrame> b(3, BinaryFrame(g));
  try {
    compare_pipelines(a, b);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "frame count mismatch: 2 vs 3");
  }
}

TEST(ReportCsv, Format) {
  MetricReport r;
  r.per_frame = {{std::numeric_limits<double>::infinity(), 1.0}, {40.0, 0.5}};
  r.mean_psnr = 40.0;
  r.mean_ssim = 0.75;
  std::ostringstream os;
  write_report_csv(r, os);
  EXPECT_EQ(os.str(),
            "frame_index,psnr_db,ssim\n0,inf,1.000000\n1,40.000000,0.500000\nmean,40.000000,0.750000\n");
}
