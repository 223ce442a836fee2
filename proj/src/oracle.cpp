#include "pathinsert/oracle.hpp"

#include <algorithm>

namespace pathinsert {

namespace {

struct Label {
  std::string station_or_segment;
  std::string track;
  StoppingPattern p;
};

}  // namespace

std::vector<FrontierPoint> oracle_frontier(const Network& net, const Timetable& tt,
                                           const ParameterSet& ps, const InsertionRequest& req,
                                           const ArcOrdering& ordering, Duration g,
                                           size_t node_cap) {
  if (g.sec < 1) throw DataError("oracle granularity must be at least 1 s");
  const int64_t W0 = req.window_start.sec, W1 = req.window_end.sec;
  if ((W1 - W0) % g.sec != 0) throw DataError("oracle window must be a multiple of the grid");
  const size_t slots = size_t((W1 - W0) / g.sec) + 1;
  ConflictChecker check(net, tt, ps);

  std::set<int> arcs(ordering.order.begin(), ordering.order.end());
  std::set<std::string> stations;
  for (int a : arcs) {
    stations.insert(net.segments[size_t(a)].from);
    stations.insert(net.segments[size_t(a)].to);
  }

  constexpr int64_t kUnset = INT64_MIN;
  // arrival[s,j,p][slot]: latest origin departure able to reach (s, j) at that
  // instant with pattern p. ready: dwell satisfied, may leave now.
  std::map<std::tuple<std::string, std::string, StoppingPattern>, std::vector<int64_t>> arrival,
      ready;
  std::map<std::tuple<int, std::string, StoppingPattern>, std::vector<int64_t>> at_exit;
  size_t nodes = 0;
  for (const std::string& sid : stations) {
    const Station& s = net.station(sid);
    for (const std::string& j : s.tracks)
      for (StoppingPattern p : allowed_patterns(req, sid)) {
        arrival[{sid, j, p}].assign(slots, kUnset);
        ready[{sid, j, p}].assign(slots, kUnset);
        nodes += 2 * slots;
      }
  }
  for (int a : arcs) {
    const Segment& seg = net.segments[size_t(a)];
    for (const std::string& k : seg.tracks)
      for (StoppingPattern p2 : allowed_patterns(req, seg.to)) {
        at_exit[{a, k, p2}].assign(slots, kUnset);
        nodes += slots;
      }
  }
  if (nodes > node_cap) throw DataError("oracle instance too large: " + std::to_string(nodes));

  // Running times and the minimum dwell must live on the grid, otherwise exits
  // would fall between slots.
  auto to_slot_ceil = [&](int64_t t) { return (t - W0 + g.sec - 1) / g.sec; };
  auto to_slot_floor = [&](int64_t t) { return (t - W0) / g.sec; };

  auto in_window = [](const std::optional<std::pair<TimePoint, TimePoint>>& w, int64_t t) {
    return !w || (w->first.sec <= t && t <= w->second.sec);
  };

  const Station& origin = net.station(req.origin);
  for (size_t slot = 0; slot < slots; ++slot) {
    const int64_t now = W0 + int64_t(slot) * g.sec;

    // Segment exits land on station tracks through the arriving transitions.
    for (auto& [key, vec] : at_exit) {
      if (vec[slot] == kUnset) continue;
      const auto& [arc, k, p2] = key;
      const Segment& seg = net.segments[size_t(arc)];
      for (int tr : net.transitions_at(seg.to, seg.id, TransitionDir::arriving)) {
        const Transition& t = net.transitions[size_t(tr)];
        if (t.segment_track != k) continue;
        if (!check.transition_instant(tr, now)) continue;
        if (!check.station_instant(seg.to, t.station_track, now)) continue;
        if (!in_window(net.station(seg.to).constraints.arrival_window, now)) continue;
        auto& cell = arrival[{seg.to, t.station_track, p2}][slot];
        cell = std::max(cell, vec[slot]);
      }
    }

    // Arrivals become departure-ready: immediately when running through, after
    // the minimum dwell when stopping.
    for (auto& [key, vec] : arrival) {
      if (vec[slot] == kUnset) continue;
      const auto& [sid, j, p] = key;
      if (p == StoppingPattern::run_through) {
        auto& cell = ready[key][slot];
        cell = std::max(cell, vec[slot]);
        continue;
      }
      int64_t dwell = 0;
      const Station& s = net.station(sid);
      if (sid != req.destination && s.constraints.min_dwell) dwell = s.constraints.min_dwell->sec;
      if (dwell % g.sec != 0) throw DataError("minimum dwell must be a grid multiple");
      if (now + dwell > W1) continue;
      if (!check.station_range(sid, j, now, now + dwell)) continue;
      auto& cell = ready[key][size_t((now + dwell - W0) / g.sec)];
      cell = std::max(cell, vec[slot]);
    }

    // Origin: leaving at a free instant is what defines the departure.
    if (stations.count(req.origin)) {
      for (const std::string& j : origin.tracks) {
        if (!check.station_instant(req.origin, j, now)) continue;
        auto& cell = ready[{req.origin, j, StoppingPattern::stop}][slot];
        cell = std::max(cell, now);
      }
    }

    // Waiting in place, one grid step at a time.
    for (auto& [key, vec] : ready) {
      const auto& [sid, j, p] = key;
      if (p != StoppingPattern::stop) continue;
      if (slot > 0 && vec[slot - 1] != kUnset && check.station_range(sid, j, now - g.sec, now))
        vec[slot] = std::max(vec[slot], vec[slot - 1]);
    }

    // Depart over each usable transition and relax every reachable exit slot.
    for (auto& [key, vec] : ready) {
      if (vec[slot] == kUnset) continue;
      const auto& [sid, j, p1] = key;
      if (!in_window(net.station(sid).constraints.departure_window, now)) continue;
      for (int tr : net.transitions_at(sid, "", TransitionDir::departing)) {
        const Transition& t = net.transitions[size_t(tr)];
        if (t.station_track != j) continue;
        auto gi = net.segment_index.find(t.segment);
        if (gi == net.segment_index.end() || !arcs.count(gi->second)) continue;
        const Segment& seg = net.segments[size_t(gi->second)];
        if (seg.from != sid) continue;
        if (!check.transition_instant(tr, now)) continue;
        ConflictChecker::ExitRange range =
            check.segment_exit_range(seg.id, t.segment_track, now, W1);
        if (range.empty()) continue;
        for (StoppingPattern p2 : allowed_patterns(req, seg.to)) {
          auto d = ps.run_time(seg.id, {p1, p2});
          if (!d || d->sec < 1) throw DataError("oracle needs positive running times");
          int64_t lo = std::max(range.lo, now + d->sec);
          if (lo > range.hi) continue;
          auto& exits = at_exit[{gi->second, t.segment_track, p2}];
          for (int64_t es = to_slot_ceil(lo); es <= to_slot_floor(range.hi); ++es)
            exits[size_t(es)] = std::max(exits[size_t(es)], vec[slot]);
        }
      }
    }
  }

  // Non-dominated scan over the destination arrivals.
  std::vector<FrontierPoint> out;
  const Station& dest = net.station(req.destination);
  int64_t best = kUnset;
  for (size_t slot = 0; slot < slots; ++slot) {
    int64_t d = kUnset;
    for (const std::string& j : dest.tracks) {
      auto it = arrival.find({req.destination, j, StoppingPattern::stop});
      if (it != arrival.end()) d = std::max(d, it->second[slot]);
    }
    if (d == kUnset || d <= best) continue;
    out.push_back({d, W0 + int64_t(slot) * g.sec, 0});
    best = d;
  }
  return out;
}

std::vector<FrontierPoint> oracle_frontier(const Network& net, const Timetable& tt,
                                           const ParameterSet& ps, const InsertionRequest& req,
                                           Duration g, size_t node_cap) {
  auto weights = run_time_weights(net, ps);
  auto paths = k_shortest_paths(net, req.origin, req.destination, req.route_count, weights);
  if (paths.empty()) return {};
  return oracle_frontier(net, tt, ps, req, build_ordering(paths, net), g, node_cap);
}

bool grid_aligned(const Timetable& tt, const ParameterSet& ps, const InsertionRequest& req,
                  Duration g) {
  auto ok = [&](int64_t v) { return v % g.sec == 0; };
  if (!ok(req.window_start.sec) || !ok(req.window_end.sec)) return false;
  for (const Train& tr : tt.trains)
    for (const TrainEvent& ev : tr.events)
      if (!ok(ev.arrival.sec) || !ok(ev.departure.sec)) return false;
  if (!ok(ps.headway_default.sec) || !ok(ps.station_default.sec) ||
      !ok(ps.transition_default.sec) || !ok(ps.transition_block.sec))
    return false;
  for (const auto& e : ps.headways)
    if (!ok(e.m.after_existing.sec) || !ok(e.m.before_existing.sec)) return false;
  for (const auto& e : ps.station_margins)
    if (!ok(e.m.after_existing.sec) || !ok(e.m.before_existing.sec)) return false;
  for (const auto& e : ps.transition_margins)
    if (!ok(e.m.after_existing.sec) || !ok(e.m.before_existing.sec)) return false;
  for (const auto& [k, d] : ps.run_times)
    if (!ok(d.sec)) return false;
  return true;
}

std::vector<FrontierPoint> expand_frontier(const std::vector<FrontierPoint>& f, Duration g) {
  // A family partially shadowed by an earlier one starts right after the tie
  // instant, which need not sit on the grid; only its grid-aligned members can
  // be compared against the oracle. On grid-aligned instances the travel time
  // behind any frontier pair is a grid multiple, so departure and arrival land
  // on the grid together.
  std::vector<FrontierPoint> out;
  for (const FrontierPoint& p : f) {
    int64_t first = ((g.sec - p.arrival % g.sec) % g.sec + g.sec) % g.sec;
    if (first > p.slack) continue;
    if ((p.departure + first) % g.sec != 0)
      throw DataError("frontier family travel time is not a grid multiple");
    for (int64_t i = first; i <= p.slack; i += g.sec)
      out.push_back({p.departure + i, p.arrival + i, 0});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pathinsert
