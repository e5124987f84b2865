#pragma once

// Aggregation-function study. For labeled events, histogram the window score
// f(D(n,n-1), ..., D(n,n-X)) separately for REAL and NOISE events and pick
// the function that best isolates REAL events in the first bin:
//
//   rule 1  the first bin must be the largest bin of the REAL distribution
//   rule 2  rank rule-1 survivors by first-bin REAL:NOISE ratio
//   rule 3  among modes whose ratio is within the tie tolerance of the best,
//           take the one with the most REAL events in the first bin
//
// If no mode passes rule 1, rules 2 and 3 run over every mode and the
// verdict is flagged.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqx/event.hpp"
#include "seqx/seqx_filter.hpp"

namespace seqx {

struct HistogramSpec {
  std::size_t bins = 20;
  double lo = 0.0;
  double hi = 0.5;

  void validate() const {
    if (bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
    if (!(hi > lo)) throw std::invalid_argument("histogram range must be non-empty");
  }
  [[nodiscard]] double width() const noexcept { return (hi - lo) / static_cast<double>(bins); }
};

/// REAL/NOISE counts per bin plus one overflow bin for values outside
/// [lo, hi).
struct SplitHistogram {
  std::vector<double> bin_edges;  // bins + 1 ascending boundaries
  std::vector<std::uint64_t> real_counts;
  std::vector<std::uint64_t> noise_counts;
  std::uint64_t real_overflow = 0;
  std::uint64_t noise_overflow = 0;

  [[nodiscard]] std::size_t bins() const noexcept { return real_counts.size(); }
  [[nodiscard]] std::uint64_t total() const noexcept {
    std::uint64_t t = real_overflow + noise_overflow;
    for (auto c : real_counts) t += c;
    for (auto c : noise_counts) t += c;
    return t;
  }
};

/// Window scores of every event past warm-up, using the filter's own window
/// (every event enters the window). Entry i belongs to event i + X.
inline std::vector<double> window_scores(std::span<const Event> events,
                                         const SensorGeometry& geom, std::size_t window_length,
                                         const Aggregation& agg) {
  SeqXConfig cfg;
  cfg.window_length = window_length;
  cfg.aggregation = agg;
  cfg.sigma = 2.0;
  SeqXFilter filter(geom, cfg);
  std::vector<double> scores;
  if (events.size() > window_length) scores.reserve(events.size() - window_length);
  for (const auto& e : events) {
    filter.check(e);
    if (!std::isnan(filter.last_score())) scores.push_back(filter.last_score());
  }
  return scores;
}

inline SplitHistogram build_histogram(std::span<const LabeledEvent> labeled,
                                      const SensorGeometry& geom, std::size_t window_length,
                                      const Aggregation& agg, const HistogramSpec& spec = {}) {
  spec.validate();
  if (labeled.size() <= window_length) {
    throw std::invalid_argument("no events left after the " + std::to_string(window_length) +
                                "-event warm-up");
  }
  const auto events = strip_labels(labeled);
  const auto scores = window_scores(events, geom, window_length, agg);

  SplitHistogram h;
  h.real_counts.assign(spec.bins, 0);
  h.noise_counts.assign(spec.bins, 0);
  h.bin_edges.resize(spec.bins + 1);
  for (std::size_t b = 0; b <= spec.bins; ++b) {
    h.bin_edges[b] = spec.lo + spec.width() * static_cast<double>(b);
  }
  h.bin_edges.back() = spec.hi;

  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool real = labeled[i + window_length].label == Label::Real;
    const double v = scores[i];
    if (v < spec.lo || v >= spec.hi) {
      ++(real ? h.real_overflow : h.noise_overflow);
      continue;
    }
    auto bin = static_cast<std::size_t>((v - spec.lo) / spec.width());
    bin = std::min(bin, spec.bins - 1);
    // Guard the floating-point division against landing one bin off.
    while (bin > 0 && v < h.bin_edges[bin]) --bin;
    while (bin + 1 < spec.bins && v >= h.bin_edges[bin + 1]) ++bin;
    ++(real ? h.real_counts[bin] : h.noise_counts[bin]);
  }
  return h;
}

struct FunctionAudit {
  std::uint64_t first_bin_real = 0;
  std::uint64_t first_bin_noise = 0;
  double real_ratio = 0.0;  // +inf when the first bin holds no noise
  bool rule1_pass = false;
  std::size_t rule2_rank = 0;  // 1-based among rule-2 candidates
  std::size_t rule3_rank = 0;  // 1-based within the near-tie group, 0 outside it
};

struct RuleVerdict {
  std::map<std::string, FunctionAudit> per_function;
  std::string selected;
  bool rule1_fallback = false;
  double tie_tolerance = 0.05;
};

inline double first_bin_ratio(std::uint64_t real, std::uint64_t noise) {
  if (noise == 0) {
    return real == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(real) / static_cast<double>(noise);
}

inline bool ratios_similar(double a, double best, double tolerance) {
  if (std::isinf(best)) return std::isinf(a);
  if (best == 0.0) return a == 0.0;
  return std::abs(a - best) <= tolerance * best;
}

/// Applies the three selection rules. All histograms must share binning.
inline RuleVerdict select_function(const std::map<std::string, SplitHistogram>& histograms,
                                   double tie_tolerance = 0.05) {
  if (histograms.empty()) throw std::invalid_argument("no histograms to select from");
  if (tie_tolerance < 0.0) throw std::invalid_argument("tie tolerance must be >= 0");
  const auto& first = histograms.begin()->second;
  for (const auto& [name, h] : histograms) {
    if (h.bin_edges != first.bin_edges || h.bins() == 0) {
      throw std::invalid_argument("histogram \"" + name + "\" does not share the common binning");
    }
  }

  RuleVerdict verdict;
  verdict.tie_tolerance = tie_tolerance;
  std::vector<std::string> candidates;
  for (const auto& [name, h] : histograms) {
    FunctionAudit a;
    a.first_bin_real = h.real_counts[0];
    a.first_bin_noise = h.noise_counts[0];
    a.real_ratio = first_bin_ratio(a.first_bin_real, a.first_bin_noise);
    const auto peak = std::max(*std::max_element(h.real_counts.begin(), h.real_counts.end()),
                               h.real_overflow);
    a.rule1_pass = h.real_counts[0] > 0 && h.real_counts[0] >= peak;
    verdict.per_function[name] = a;
    if (a.rule1_pass) candidates.push_back(name);
  }
  if (candidates.empty()) {
    verdict.rule1_fallback = true;
    for (const auto& [name, h] : histograms) candidates.push_back(name);
  }

  auto& audit = verdict.per_function;
  std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    return audit[a].real_ratio > audit[b].real_ratio;
  });
  for (std::size_t i = 0; i < candidates.size(); ++i) audit[candidates[i]].rule2_rank = i + 1;

  const double best = audit[candidates.front()].real_ratio;
  std::vector<std::string> tied;
  for (const auto& c : candidates) {
    if (ratios_similar(audit[c].real_ratio, best, tie_tolerance)) tied.push_back(c);
  }
  std::stable_sort(tied.begin(), tied.end(), [&](const auto& a, const auto& b) {
    return audit[a].first_bin_real > audit[b].first_bin_real;
  });
  for (std::size_t i = 0; i < tied.size(); ++i) audit[tied[i]].rule3_rank = i + 1;
  verdict.selected = tied.front();
  return verdict;
}

/// CSV: bin_lo,bin_hi,real_count,noise_count. The overflow bin is written
/// last with bin_lo = hi and bin_hi = inf.
inline void write_histogram_csv(const SplitHistogram& h, std::ostream& os) {
  os << "bin_lo,bin_hi,real_count,noise_count\n";
  for (std::size_t b = 0; b < h.bins(); ++b) {
    os << h.bin_edges[b] << ',' << h.bin_edges[b + 1] << ',' << h.real_counts[b] << ','
       << h.noise_counts[b] << '\n';
  }
  os << h.bin_edges.back() << ",inf," << h.real_overflow << ',' << h.noise_overflow << '\n';
}

inline void write_verdict_report(const RuleVerdict& v, std::ostream& os) {
  os << "selected: " << v.selected << '\n';
  os << "rule1_fallback: " << (v.rule1_fallback ? "yes" : "no") << '\n';
  os << "tie_tolerance: " << v.tie_tolerance << '\n';
  for (const auto& [name, a] : v.per_function) {
    os << name << ": first_bin_real=" << a.first_bin_real
       << " first_bin_noise=" << a.first_bin_noise << " real_ratio=" << a.real_ratio
       << " rule1=" << (a.rule1_pass ? "pass" : "fail") << " rule2_rank=" << a.rule2_rank
       << " rule3_rank=" << a.rule3_rank << '\n';
  }
}

}  // namespace seqx
