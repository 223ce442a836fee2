#include "pathinsert/free_intervals.hpp"

#include <algorithm>

namespace pathinsert {

namespace {

// Complement of the forbidden zones within the window. Zones are open: the
// instant exactly one margin away from an occupation stays usable.
FreeIntervalList subtract_zones(FreeInterval window,
                                std::vector<std::pair<int64_t, int64_t>> zones) {
  // zone (a, b) forbids the integer instants [a + 1, b - 1]
  std::vector<std::pair<int64_t, int64_t>> closed;
  for (auto [a, b] : zones)
    if (a + 1 <= b - 1) closed.emplace_back(a + 1, b - 1);
  std::sort(closed.begin(), closed.end());
  FreeIntervalList out;
  int64_t cursor = window.lo;
  for (auto [a, b] : closed) {
    if (b < cursor) continue;
    if (a > window.hi) break;
    if (a > cursor) out.v.push_back({cursor, std::min(a - 1, window.hi)});
    cursor = std::max(cursor, b + 1);
    if (cursor > window.hi) break;
  }
  if (cursor <= window.hi) out.v.push_back({cursor, window.hi});
  return out;
}

}  // namespace

FreeIntervalList station_free(const Network& net, const Timetable& tt, const ParameterSet& ps,
                              const std::string& station, const std::string& track,
                              FreeInterval window) {
  (void)net;
  std::vector<std::pair<int64_t, int64_t>> zones;
  auto it = tt.station_use.find({station, track});
  if (it != tt.station_use.end()) {
    for (const StationOccupation& o : it->second) {
      MarginPair m = ps.resolve_station(tt.train(o.train).id, station, track);
      zones.emplace_back(o.arrival.sec - m.before_existing.sec,
                         o.departure.sec + m.after_existing.sec);
    }
  }
  return subtract_zones(window, std::move(zones));
}

FreeIntervalList transition_free(const Network& net, const Timetable& tt, const ParameterSet& ps,
                                 int transition, FreeInterval window) {
  const Transition& mine = net.transitions[size_t(transition)];
  std::vector<std::pair<int64_t, int64_t>> zones;
  for (int c : net.conflict_set(transition)) {
    auto it = tt.transition_use.find(c);
    if (it == tt.transition_use.end()) continue;
    for (const TransitionMovement& mv : it->second) {
      MarginPair m = ps.resolve_transition(tt.train(mv.train).id, mine, mv.kind);
      zones.emplace_back(mv.instant.sec - m.before_existing.sec,
                         mv.instant.sec + m.after_existing.sec);
    }
  }
  return subtract_zones(window, std::move(zones));
}

FreeIntervalPairList segment_free(const Network& net, const Timetable& tt, const ParameterSet& ps,
                                  const std::string& segment, const std::string& track,
                                  FreeInterval window) {
  const Segment& on = net.segment(segment);
  struct Ends {
    int64_t clear_entry, block_entry, clear_exit, block_exit;
  };
  std::vector<Ends> ends;
  auto it = tt.segment_use.find({on.resource, track});
  if (it != tt.segment_use.end()) {
    for (const SegmentOccupation& o : it->second) {
      const Segment& used = net.segments[size_t(o.segment)];
      MarginPair m = ps.resolve_headway(tt.train(o.train).id, on.id);
      bool opposing = used.from != on.from;
      if (opposing || on.blocks <= 1) {
        ends.push_back({o.exit.sec + m.after_existing.sec, o.enter.sec - m.before_existing.sec,
                        o.exit.sec + m.after_existing.sec, o.enter.sec - m.before_existing.sec});
      } else {
        ends.push_back({o.enter.sec + m.after_existing.sec, o.enter.sec - m.before_existing.sec,
                        o.exit.sec + m.after_existing.sec, o.exit.sec - m.before_existing.sec});
      }
    }
  }
  size_t n = ends.size();
  // Gap g sits after the first g occupations. A train may impose a tighter
  // bound than its immediate neighbour when margins differ, hence the running
  // max/min over both sides.
  std::vector<int64_t> pre_entry(n + 1, window.lo), pre_exit(n + 1, window.lo);
  for (size_t i = 0; i < n; ++i) {
    pre_entry[i + 1] = std::max(pre_entry[i], ends[i].clear_entry);
    pre_exit[i + 1] = std::max(pre_exit[i], ends[i].clear_exit);
  }
  std::vector<int64_t> suf_entry(n + 1, window.hi), suf_exit(n + 1, window.hi);
  for (size_t i = n; i-- > 0;) {
    suf_entry[i] = std::min(suf_entry[i + 1], ends[i].block_entry);
    suf_exit[i] = std::min(suf_exit[i + 1], ends[i].block_exit);
  }
  FreeIntervalPairList out;
  for (size_t g = 0; g <= n; ++g) {
    FreePair p{{pre_entry[g], suf_entry[g]}, {pre_exit[g], suf_exit[g]}};
    if (on.blocks <= 1) {
      p.entry.lo = p.exit.lo = std::max(p.entry.lo, p.exit.lo);
      p.entry.hi = p.exit.hi = std::min(p.entry.hi, p.exit.hi);
    }
    if (p.entry.lo > p.entry.hi || p.exit.lo > p.exit.hi) continue;
    out.v.push_back(p);
  }
  return out;
}

const FreeIntervalList& FreeIntervalCache::station(const std::string& s,
                                                   const std::string& track) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = stations_.try_emplace({s, track});
  if (inserted) it->second = station_free(net_, tt_, ps_, s, track, window_);
  return it->second;
}

const FreeIntervalList& FreeIntervalCache::transition(int t) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = transitions_.try_emplace(t);
  if (inserted) it->second = transition_free(net_, tt_, ps_, t, window_);
  return it->second;
}

const FreeIntervalPairList& FreeIntervalCache::segment(const std::string& seg,
                                                       const std::string& track) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = segments_.try_emplace({seg, track});
  if (inserted) it->second = segment_free(net_, tt_, ps_, seg, track, window_);
  return it->second;
}

size_t FreeIntervalCache::station_interval_count(const std::string& s,
                                                 const std::string& track) const {
  return station(s, track).v.size();
}

}  // namespace pathinsert
