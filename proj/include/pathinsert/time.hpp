#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace pathinsert {

// Absolute instant, integer seconds since the instance epoch (day 0 = 1970-01-01
// for documents that use calendar timestamps). int64 gives far more range than
// the multi-day windows we need.
struct TimePoint {
  int64_t sec = 0;
  auto operator<=>(const TimePoint&) const = default;
};

// Non-negative span in seconds. Validated at the parsing boundary.
struct Duration {
  int64_t sec = 0;
  auto operator<=>(const Duration&) const = default;
};

inline TimePoint operator+(TimePoint t, Duration d) { return {t.sec + d.sec}; }
inline TimePoint operator-(TimePoint t, Duration d) { return {t.sec - d.sec}; }
inline Duration operator+(Duration a, Duration b) { return {a.sec + b.sec}; }

// Accepts integer seconds, "HH:MM[:SS]" (day 0) or "YYYY-MM-DDTHH:MM[:SS]".
TimePoint parse_time(const std::string& text);
Duration parse_duration(const std::string& text);

// Renders "HH:MM:SS" for day-0 instants, full "YYYY-MM-DDTHH:MM:SS" otherwise.
std::string format_time(TimePoint t);
std::string format_seconds(TimePoint t);

}  // namespace pathinsert
