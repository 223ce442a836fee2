#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "pathinsert/time.hpp"

namespace pathinsert {

// Closed interval of feasible instants, endpoints inclusive.
struct FreeInterval {
  int64_t lo = 0;
  int64_t hi = 0;
  bool contains(int64_t t) const { return lo <= t && t <= hi; }
};

// Sorted, pairwise disjoint (gap >= 1 s), clipped to the query window.
struct FreeIntervalList {
  std::vector<FreeInterval> v;
  bool contains(int64_t t) const;
  bool empty() const { return v.empty(); }
};

// Entry/exit interval pair for one gap between occupations of a segment track.
struct FreePair {
  FreeInterval entry;
  FreeInterval exit;
};

struct FreeIntervalPairList {
  std::vector<FreePair> v;
  FreeIntervalList entries() const;
};

// Provenance node: how a table item came to be, for backward path extraction.
struct ProvNode {
  enum class Kind : uint8_t {
    Origin,    // departure instant at the origin station
    Depart,    // station -> segment transition, time unchanged
    Arrive,    // segment -> station transition, time unchanged
    Full,      // segment traversal at minimum running time (exit = entry + d)
    Slow,      // slower traversal; entry recoverable from the source snapshot
    Wait,      // waiting at a station within one free interval
  };
  Kind kind = Kind::Origin;
  int32_t parent = -1;
  // Snapshot of the source item at creation time (Slow/Wait need it to recover
  // the predecessor instant; others keep it for assertions).
  int64_t lo = 0, hi = 0, dep_lo = 0;
  int8_t slope = 0;
  int64_t param = 0;       // d for Full, dwell for Wait
  int32_t transition = -1; // network transition index for Depart/Arrive
  int32_t track = -1;      // origin track index for Origin
  uint8_t pattern = 0;     // StoppingPattern at the relevant station
};

class ProvArena {
 public:
  int32_t add(const ProvNode& n) {
    nodes_.push_back(n);
    return int32_t(nodes_.size()) - 1;
  }
  const ProvNode& at(int32_t i) const { return nodes_[size_t(i)]; }
  size_t size() const { return nodes_.size(); }

 private:
  std::deque<ProvNode> nodes_;
};

// Presence interval [lo, hi] at some location, with the latest feasible
// origin-departure time as an affine map dep(t) = dep_lo + slope * (t - lo).
struct MappedInterval {
  int64_t lo = 0;
  int64_t hi = 0;
  int64_t dep_lo = 0;
  int8_t slope = 1;  // 0 or 1
  int32_t prov = -1;
  int64_t dep(int64_t t) const { return dep_lo + (slope ? t - lo : 0); }
  int64_t dep_hi() const { return dep(hi); }
  bool operator==(const MappedInterval&) const = default;
};

// Sorted, pairwise disjoint items; each item a single affine piece.
struct MappedIntervalList {
  std::vector<MappedInterval> items;
  bool empty() const { return items.empty(); }
  size_t size() const { return items.size(); }
  // Latest origin departure for presence instant t, or nullopt-like -1 flag via
  // the bool. Linear-free: binary search.
  bool defined(int64_t t) const;
  int64_t dep_at(int64_t t) const;  // precondition: defined(t)
};

// Canonical form: sorted, disjoint, adjacent items merged when the affine map
// continues exactly and the provenance matches. Input items may overlap; the
// pointwise maximum of dep wins, earlier item on ties.
MappedIntervalList normalize(std::vector<MappedInterval> raw);

// Pointwise max of dep over the union of domains. Ties keep `a`.
MappedIntervalList unite(const MappedIntervalList& a, const MappedIntervalList& b);

// Restriction of the domain to the free intervals; dep values unchanged.
MappedIntervalList intersect(const MappedIntervalList& a, const FreeIntervalList& f);

// Traversal by at least `d` within the free pairs: every item is translated by
// d and truncated to the exit interval of its pair, and exit instants beyond
// the translated end get the constant departure of the latest usable entry.
// Precondition: domain(a) is inside the union of the entry intervals.
MappedIntervalList shift(const MappedIntervalList& a, Duration d,
                         const FreeIntervalPairList& f, ProvArena* arena);

// Waiting at a station within each free interval, with an optional minimum
// dwell: t is reachable iff some item instant t' <= t - dwell lies in the same
// free interval; dep(t) is the max over those. dwell = 0 keeps the original
// instants. Precondition: domain(a) is inside f.
MappedIntervalList extend(const MappedIntervalList& a, const FreeIntervalList& f,
                          Duration dwell, ProvArena* arena);

// Invariant check used by tests and debug paths; throws on violation.
void check_canonical(const MappedIntervalList& l);

std::string to_string(const MappedIntervalList& l);
std::string to_string(const FreeIntervalList& l);

}  // namespace pathinsert
