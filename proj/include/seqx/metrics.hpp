#pragma once

// PSNR and SSIM between binary frames.
//
// SSIM follows the canonical formulation: 11x11 Gaussian window (sigma 1.5,
// normalized), K1 = 0.01, K2 = 0.03, L = 255, C3 = C2 / 2, averaged over
// the window positions that lie fully inside the frame. With C3 = C2 / 2
// the contrast and structure terms collapse into
//
//   ((2 mu_a mu_b + C1)(2 cov_ab + C2)) / ((mu_a^2 + mu_b^2 + C1)(var_a + var_b + C2)).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "seqx/framer.hpp"

namespace seqx {

inline constexpr double kDynamicRange = 255.0;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;
inline constexpr double kSsimC1 = (kSsimK1 * kDynamicRange) * (kSsimK1 * kDynamicRange);
inline constexpr double kSsimC2 = (kSsimK2 * kDynamicRange) * (kSsimK2 * kDynamicRange);
inline constexpr std::size_t kSsimWindow = 11;
inline constexpr double kSsimGaussianSigma = 1.5;

class GeometryMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_same_geometry(const BinaryFrame& a, const BinaryFrame& b) {
  if (a.geometry() != b.geometry()) {
    throw GeometryMismatch("frame geometries differ: " + std::to_string(a.width()) + "x" +
                           std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                           "x" + std::to_string(b.height()));
  }
}

}  // namespace detail

/// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
inline std::array<double, kSsimWindow> gaussian_taps() {
  std::array<double, kSsimWindow> g{};
  const double c = (kSsimWindow - 1) / 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < kSsimWindow; ++i) {
    const double d = static_cast<double>(i) - c;
    g[i] = std::exp(-(d * d) / (2.0 * kSsimGaussianSigma * kSsimGaussianSigma));
    sum += g[i];
  }
  for (auto& v : g) v /= sum;
  return g;
}

/// Mean squared error over all pixels.
inline double mse(const BinaryFrame& a, const BinaryFrame& b) {
  detail::require_same_geometry(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::int64_t d = std::int64_t{pa[i]} - std::int64_t{pb[i]};
    acc += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(acc) / static_cast<double>(pa.size());
}

/// PSNR in dB. Identical frames give +infinity.
inline double psnr(const BinaryFrame& reference, const BinaryFrame& test) {
  const double err = mse(reference, test);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kDynamicRange * kDynamicRange / err);
}

[[nodiscard]] inline bool is_identical(double psnr_db) noexcept { return std::isinf(psnr_db); }

/// Mean SSIM over all valid window positions, computed with separable
/// Gaussian filtering of the first and second moments.
inline double ssim(const BinaryFrame& reference, const BinaryFrame& test) {
  detail::require_same_geometry(reference, test);
  const std::size_t w = reference.width();
  const std::size_t h = reference.height();
  if (w < kSsimWindow || h < kSsimWindow) {
    throw std::invalid_argument("frame " + std::to_string(w) + "x" + std::to_string(h) +
                                " is smaller than the 11x11 SSIM window");
  }
  const auto g = gaussian_taps();
  const std::size_t ow = w - kSsimWindow + 1;
  const std::size_t oh = h - kSsimWindow + 1;
  const auto pa = reference.pixels();
  const auto pb = test.pixels();

  // Horizontal pass for a, b, a^2, b^2, ab: h rows by ow columns each.
  constexpr std::size_t kMaps = 5;
  std::array<std::vector<double>, kMaps> horiz;
  for (auto& m : horiz) m.assign(h * ow, 0.0);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      std::array<double, kMaps> s{};
      for (std::size_t k = 0; k < kSsimWindow; ++k) {
        const double va = pa[y * w + x + k];
        const double vb = pb[y * w + x + k];
        s[0] += g[k] * va;
        s[1] += g[k] * vb;
        s[2] += g[k] * (va * va);
        s[3] += g[k] * (vb * vb);
        s[4] += g[k] * (va * vb);
      }
      for (std::size_t m = 0; m < kMaps; ++m) horiz[m][y * ow + x] = s[m];
    }
  }

  double total = 0.0;
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      std::array<double, kMaps> s{};
      for (std::size_t k = 0; k < kSsimWindow; ++k) {
        for (std::size_t m = 0; m < kMaps; ++m) s[m] += g[k] * horiz[m][(y + k) * ow + x];
      }
      const double mu_a = s[0];
      const double mu_b = s[1];
      const double var_a = s[2] - mu_a * mu_a;
      const double var_b = s[3] - mu_b * mu_b;
      const double cov = s[4] - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + kSsimC1) * (2.0 * cov + kSsimC2)) /
               ((mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2));
    }
  }
  return total / static_cast<double>(ow * oh);
}

struct FrameMetric {
  double psnr_db = 0.0;
  double ssim = 0.0;
};

struct MetricReport {
  std::vector<FrameMetric> per_frame;
  /// Mean over finite PSNR values; +infinity when every pair is identical.
  double mean_psnr = std::numeric_limits<double>::infinity();
  double mean_ssim = 0.0;
  std::size_t identical_frames = 0;
};

/// Pairwise PSNR/SSIM of two equally long frame sequences. With
/// `parallel`, frame pairs are split across hardware threads.
inline MetricReport compare_pipelines(std::span<const BinaryFrame> reference,
                                      std::span<const BinaryFrame> test, bool parallel = false) {
  if (reference.size() != test.size()) {
    throw std::invalid_argument("frame count mismatch: " + std::to_string(reference.size()) +
                                " vs " + std::to_string(test.size()));
  }
  MetricReport report;
  report.per_frame.resize(reference.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      report.per_frame[i] = {psnr(reference[i], test[i]), ssim(reference[i], test[i])};
    }
  };
  const std::size_t n = reference.size();
  const std::size_t threads =
      parallel ? std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n))
               : 1;
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t b = 0; b < n; b += chunk) {
      jobs.push_back(std::async(std::launch::async, work, b, std::min(n, b + chunk)));
    }
    for (auto& j : jobs) j.get();
  }

  double psnr_sum = 0.0;
  std::size_t finite = 0;
  double ssim_sum = 0.0;
  for (const auto& m : report.per_frame) {
    if (is_identical(m.psnr_db)) {
      ++report.identical_frames;
    } else {
      psnr_sum += m.psnr_db;
      ++finite;
    }
    ssim_sum += m.ssim;
  }
  if (finite > 0) report.mean_psnr = psnr_sum / static_cast<double>(finite);
  report.mean_ssim = n > 0 ? ssim_sum / static_cast<double>(n)
                           : std::numeric_limits<double>::quiet_NaN();
  return report;
}

namespace detail {

inline void put_metric(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << "inf";
  } else {
    os << std::fixed << std::setprecision(6) << v;
  }
}

}  // namespace detail

/// CSV: "frame_index,psnr_db,ssim", one row per pair, then a "mean" row.
inline void write_report_csv(const MetricReport& report, std::ostream& os) {
  os << "frame_index,psnr_db,ssim\n";
  for (std::size_t i = 0; i < report.per_frame.size(); ++i) {
    os << i << ',';
    detail::put_metric(os, report.per_frame[i].psnr_db);
    os << ',';
    detail::put_metric(os, report.per_frame[i].ssim);
    os << '\n';
  }
  os << "mean,";
  detail::put_metric(os, report.mean_psnr);
  os << ',';
  detail::put_metric(os, report.mean_ssim);
  os << '\n';
}

}  // namespace seqx
