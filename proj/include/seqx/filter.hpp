#pragma once

#include <concepts>
#include <span>
#include <vector>

#include "seqx/event.hpp"

namespace seqx {

/// Anything that judges one event at a time and keeps its own state.
template <typename F>
concept EventFilter = requires(F f, const Event& e) {
  { f.check(e) } -> std::same_as<Label>;
};

/// Accepts every event.
struct PassAllFilter {
  Label check(const Event&) const noexcept { return Label::Real; }
};

/// Labels every event of `events` in order.
template <EventFilter F>
std::vector<LabeledEvent> run_filter(F& filter, std::span<const Event> events) {
  std::vector<LabeledEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back({e, filter.check(e)});
  return out;
}

template <EventFilter F>
std::vector<Label> verdicts(F& filter, std::span<const Event> events) {
  std::vector<Label> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(filter.check(e));
  return out;
}

/// Events labeled REAL, in input order.
inline std::vector<Event> passed_events(std::span<const LabeledEvent> labeled) {
  std::vector<Event> out;
  for (const auto& le : labeled) {
    if (le.label == Label::Real) out.push_back(le.event);
  }
  return out;
}

}  // namespace seqx
