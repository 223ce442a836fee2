#include "pathinsert/checks.hpp"

#include <algorithm>

namespace pathinsert {

bool ConflictChecker::station_instant(const std::string& s, const std::string& j,
                                      int64_t t) const {
  return station_range(s, j, t, t);
}

bool ConflictChecker::station_range(const std::string& s, const std::string& j, int64_t t1,
                                    int64_t t2) const {
  auto it = tt_.station_use.find({s, j});
  if (it == tt_.station_use.end()) return true;
  for (const StationOccupation& o : it->second) {
    MarginPair m = ps_.resolve_station(tt_.train(o.train).id, s, j);
    bool before = t2 <= o.arrival.sec - m.before_existing.sec;
    bool after = t1 >= o.departure.sec + m.after_existing.sec;
    if (!before && !after) return false;
  }
  return true;
}

bool ConflictChecker::transition_instant(int transition, int64_t t) const {
  const Transition& mine = net_.transitions[size_t(transition)];
  for (int c : net_.conflict_set(transition)) {
    auto it = tt_.transition_use.find(c);
    if (it == tt_.transition_use.end()) continue;
    for (const TransitionMovement& mv : it->second) {
      MarginPair m = ps_.resolve_transition(tt_.train(mv.train).id, mine, mv.kind);
      bool before = t <= mv.instant.sec - m.before_existing.sec;
      bool after = t >= mv.instant.sec + m.after_existing.sec;
      if (!before && !after) return false;
    }
  }
  return true;
}

ConflictChecker::EndInstants ConflictChecker::end_instants(const Segment& on,
                                                           const SegmentOccupation& o) const {
  const Segment& used = net_.segments[size_t(o.segment)];
  MarginPair m = ps_.resolve_headway(tt_.train(o.train).id, on.id);
  bool opposing = used.from != on.from;
  // Opposing traffic, and anything on a single-block segment, owns the whole
  // segment from entry to exit; same-direction traffic on a multi-block
  // segment only pins down the order at each end.
  if (opposing || on.blocks <= 1) {
    return {o.exit.sec + m.after_existing.sec, o.enter.sec - m.before_existing.sec,
            o.exit.sec + m.after_existing.sec, o.enter.sec - m.before_existing.sec};
  }
  return {o.enter.sec + m.after_existing.sec, o.enter.sec - m.before_existing.sec,
          o.exit.sec + m.after_existing.sec, o.exit.sec - m.before_existing.sec};
}

bool ConflictChecker::segment_traversal(const std::string& seg, const std::string& k, int64_t t1,
                                        int64_t t2) const {
  if (t2 < t1) return false;
  const Segment& on = net_.segment(seg);
  auto it = tt_.segment_use.find({on.resource, k});
  if (it == tt_.segment_use.end()) return true;
  for (const SegmentOccupation& o : it->second) {
    EndInstants e = end_instants(on, o);
    bool after = t1 >= e.clear_entry && t2 >= e.clear_exit;
    bool before = t1 <= e.block_entry && t2 <= e.block_exit;
    if (!after && !before) return false;
  }
  return true;
}

ConflictChecker::ExitRange ConflictChecker::segment_exit_range(const std::string& seg,
                                                               const std::string& k, int64_t t1,
                                                               int64_t window_hi) const {
  ExitRange r{t1, window_hi};
  const Segment& on = net_.segment(seg);
  auto it = tt_.segment_use.find({on.resource, k});
  if (it == tt_.segment_use.end()) return r;
  for (const SegmentOccupation& o : it->second) {
    EndInstants e = end_instants(on, o);
    if (t1 >= e.clear_entry) {
      r.lo = std::max(r.lo, e.clear_exit);
    } else if (t1 <= e.block_entry) {
      r.hi = std::min(r.hi, e.block_exit);
    } else {
      return {1, 0};
    }
  }
  return r;
}

bool ConflictChecker::segment_end_instant(const std::string& seg, const std::string& k,
                                          bool exit_end, int64_t t, int64_t window_lo,
                                          int64_t window_hi) const {
  if (t < window_lo || t > window_hi) return false;
  const Segment& on = net_.segment(seg);
  int64_t other_lo = window_lo, other_hi = window_hi;
  auto it = tt_.segment_use.find({on.resource, k});
  if (it != tt_.segment_use.end()) {
    for (const SegmentOccupation& o : it->second) {
      EndInstants e = end_instants(on, o);
      int64_t clear_this = exit_end ? e.clear_exit : e.clear_entry;
      int64_t block_this = exit_end ? e.block_exit : e.block_entry;
      int64_t clear_other = exit_end ? e.clear_entry : e.clear_exit;
      int64_t block_other = exit_end ? e.block_entry : e.block_exit;
      if (t >= clear_this) {
        other_lo = std::max(other_lo, clear_other);
      } else if (t <= block_this) {
        other_hi = std::min(other_hi, block_other);
      } else {
        return false;
      }
    }
  }
  return other_lo <= other_hi;
}

std::vector<std::string> validate(const Network& net, const Timetable& tt,
                                  const ParameterSet& ps) {
  std::vector<std::string> out;
  for (const std::string& s : net.unreachable_stations())
    out.push_back("structure: station '" + s + "' is not reachable from the rest of the network");
  for (const Segment& g : net.segments) {
    if (net.transitions_at(g.from, g.id, TransitionDir::departing).empty())
      out.push_back("structure: segment '" + g.id + "' has no departing transition at '" +
                    g.from + "'");
    if (net.transitions_at(g.to, g.id, TransitionDir::arriving).empty())
      out.push_back("structure: segment '" + g.id + "' has no arriving transition at '" + g.to +
                    "'");
  }
  // Undeclared transitions of existing trains cannot carry conflicts.
  for (const Train& tr : tt.trains) {
    for (size_t e = 0; e + 1 < tr.events.size(); ++e) {
      const TrainEvent& ev = tr.events[e];
      const TrainEvent& nx = tr.events[e + 1];
      if (net.transition_id({ev.station, ev.track, ev.next_segment, ev.next_segment_track,
                             TransitionDir::departing}) < 0)
        out.push_back("structure: train '" + tr.id + "' departs '" + ev.station +
                      "' over an undeclared transition");
      if (net.transition_id({nx.station, nx.track, ev.next_segment, ev.next_segment_track,
                             TransitionDir::arriving}) < 0)
        out.push_back("structure: train '" + tr.id + "' arrives at '" + nx.station +
                      "' over an undeclared transition");
    }
  }

  // Margin review between existing trains. The base timetable stays
  // authoritative; these are warnings only.
  for (const auto& [key, occs] : tt.station_use) {
    for (size_t i = 0; i + 1 < occs.size(); ++i) {
      const StationOccupation& a = occs[i];
      const StationOccupation& b = occs[i + 1];
      MarginPair m = ps.resolve_station(tt.train(a.train).id, key.first, key.second);
      if (b.arrival.sec < a.departure.sec + m.after_existing.sec)
        out.push_back("margin: trains '" + tt.train(a.train).id + "' and '" +
                      tt.train(b.train).id + "' are " +
                      std::to_string(b.arrival.sec - a.departure.sec) + " s apart on track " +
                      key.second + " of station " + key.first + " (need " +
                      std::to_string(m.after_existing.sec) + " s)");
    }
  }
  for (const auto& [key, occs] : tt.segment_use) {
    for (size_t i = 0; i + 1 < occs.size(); ++i) {
      const SegmentOccupation& a = occs[i];
      const SegmentOccupation& b = occs[i + 1];
      const Segment& ga = net.segments[size_t(a.segment)];
      const Segment& gb = net.segments[size_t(b.segment)];
      MarginPair m = ps.resolve_headway(tt.train(a.train).id, gb.id);
      bool opposing = ga.from != gb.from;
      bool exclusive = opposing || ga.blocks <= 1;
      int64_t gap = exclusive ? b.enter.sec - a.exit.sec
                              : std::min(b.enter.sec - a.enter.sec, b.exit.sec - a.exit.sec);
      if (gap < m.after_existing.sec)
        out.push_back("margin: trains '" + tt.train(a.train).id + "' and '" +
                      tt.train(b.train).id + "' are " + std::to_string(gap) +
                      " s apart on segment " + gb.id + " track " + key.second + " (need " +
                      std::to_string(m.after_existing.sec) + " s)");
    }
  }
  for (size_t ti = 0; ti < net.transitions.size(); ++ti) {
    auto mine = tt.transition_use.find(int(ti));
    if (mine == tt.transition_use.end()) continue;
    for (int c : net.conflict_set(int(ti))) {
      if (c < int(ti)) continue;  // each unordered pair once
      auto other = tt.transition_use.find(c);
      if (other == tt.transition_use.end()) continue;
      for (const TransitionMovement& a : mine->second) {
        for (const TransitionMovement& b : other->second) {
          if (c == int(ti) && a.train >= b.train) continue;
          if (a.train == b.train) continue;
          MarginPair m =
              ps.resolve_transition(tt.train(a.train).id, net.transitions[size_t(c)], a.kind);
          int64_t gap = b.instant.sec - a.instant.sec;
          bool clean = gap >= m.after_existing.sec || -gap >= m.before_existing.sec;
          if (!clean)
            out.push_back("margin: trains '" + tt.train(a.train).id + "' and '" +
                          tt.train(b.train).id + "' conflict at transition " +
                          to_string(net.transitions[size_t(ti)]) + " (" + std::to_string(gap) +
                          " s apart)");
        }
      }
    }
  }
  return out;
}

}  // namespace pathinsert
