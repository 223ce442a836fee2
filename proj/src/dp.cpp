#include "pathinsert/dp.hpp"

#include <algorithm>

namespace pathinsert {

namespace {

const MappedIntervalList kEmpty;

FreeIntervalList single(FreeInterval f) { return FreeIntervalList{{f}}; }

MappedIntervalList tag_items(const MappedIntervalList& l, ProvNode::Kind kind, int transition,
                             StoppingPattern p, ProvArena& arena) {
  MappedIntervalList out = l;
  for (MappedInterval& m : out.items) {
    ProvNode n;
    n.kind = kind;
    n.parent = m.prov;
    n.lo = m.lo;
    n.hi = m.hi;
    n.dep_lo = m.dep_lo;
    n.slope = m.slope;
    n.transition = transition;
    n.pattern = uint8_t(p);
    m.prov = arena.add(n);
  }
  return out;
}

}  // namespace

const MappedIntervalList& DpTables::station(const std::string& s, const std::string& track,
                                            StoppingPattern p) const {
  auto it = station_tables.find({s, track, p});
  return it == station_tables.end() ? kEmpty : it->second;
}

std::vector<StoppingPattern> allowed_patterns(const InsertionRequest& req, const std::string& s) {
  if (s == req.origin || s == req.destination) return {StoppingPattern::stop};
  std::vector<StoppingPattern> out;
  if (!req.require_stop.count(s)) out.push_back(StoppingPattern::run_through);
  if (!req.no_stop.count(s)) out.push_back(StoppingPattern::stop);
  return out;
}

void init_origin(const Network& net, const FreeIntervalCache& free, const InsertionRequest& req,
                 DpTables& tables) {
  const Station& u = net.station(req.origin);
  for (size_t j = 0; j < u.tracks.size(); ++j) {
    MappedIntervalList init;
    for (const FreeInterval& f : free.station(u.id, u.tracks[j]).v) {
      ProvNode n;
      n.kind = ProvNode::Kind::Origin;
      n.lo = f.lo;
      n.hi = f.hi;
      n.dep_lo = f.lo;
      n.slope = 1;
      n.track = int32_t(j);
      n.pattern = uint8_t(StoppingPattern::stop);
      init.items.push_back({f.lo, f.hi, f.lo, 1, tables.arena.add(n)});
    }
    tables.station_tables[{u.id, u.tracks[j], StoppingPattern::stop}] = std::move(init);
  }
}

void process_segment(const Network& net, const ParameterSet& ps, const FreeIntervalCache& free,
                     const InsertionRequest& req, int arc, DpTables& tables) {
  const Segment& seg = net.segments[size_t(arc)];
  const Station& s1 = net.station(seg.from);
  const Station& s2 = net.station(seg.to);
  const auto allowed1 = allowed_patterns(req, s1.id);
  const auto allowed2 = allowed_patterns(req, s2.id);

  auto sorted_transitions = [&](TransitionDir dir) {
    std::vector<int> ids = net.transitions_at(dir == TransitionDir::departing ? s1.id : s2.id,
                                              seg.id, dir);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      const Transition& ta = net.transitions[size_t(a)];
      const Transition& tb = net.transitions[size_t(b)];
      return std::tie(ta.station_track, ta.segment_track) <
             std::tie(tb.station_track, tb.segment_track);
    });
    return ids;
  };
  const std::vector<int> outgoing = sorted_transitions(TransitionDir::departing);
  const std::vector<int> incoming = sorted_transitions(TransitionDir::arriving);

  // Departing transitions: restrict the station tables to instants where the
  // throat is free (and to the departure window, when one is set).
  for (StoppingPattern p1 : allowed1) {
    for (int tr : outgoing) {
      const Transition& t = net.transitions[size_t(tr)];
      MappedIntervalList x = tables.station(s1.id, t.station_track, p1);
      if (s1.constraints.departure_window) {
        auto [a, b] = *s1.constraints.departure_window;
        x = intersect(x, single({a.sec, b.sec}));
      }
      x = intersect(x, free.transition(tr));
      tables.transition_tables[{tr, p1}] =
          tag_items(x, ProvNode::Kind::Depart, tr, p1, tables.arena);
    }
  }

  // Per segment track: merge the feeding transitions, clip to the entry
  // intervals, traverse with the pattern-pair running time, then merge the
  // entry patterns away.
  for (const std::string& k : seg.tracks) {
    const FreeIntervalPairList& pairs = free.segment(seg.id, k);
    const FreeIntervalList entries = pairs.entries();
    std::map<StoppingPattern, MappedIntervalList> at_entry;
    for (StoppingPattern p1 : allowed1) {
      MappedIntervalList merged;
      for (int tr : outgoing)
        if (net.transitions[size_t(tr)].segment_track == k)
          merged = unite(merged, tables.transition_tables[{tr, p1}]);
      at_entry[p1] = intersect(merged, entries);
    }
    for (StoppingPattern p2 : allowed2) {
      MappedIntervalList merged;
      for (StoppingPattern p1 : allowed1) {
        Duration d = ps.require_run_time(seg.id, {p1, p2});
        merged = unite(merged, shift(at_entry[p1], d, pairs, &tables.arena));
      }
      tables.segment_tables[{seg.id, k, p2}] = std::move(merged);
    }
  }

  // Arriving transitions.
  for (StoppingPattern p2 : allowed2) {
    for (int tr : incoming) {
      const Transition& t = net.transitions[size_t(tr)];
      MappedIntervalList x =
          intersect(tables.segment_tables[{seg.id, t.segment_track, p2}], free.transition(tr));
      tables.transition_tables[{tr, p2}] =
          tag_items(x, ProvNode::Kind::Arrive, tr, p2, tables.arena);
    }
  }

  // Arrival station tables; contributions from arcs processed earlier keep
  // priority on departure ties.
  for (const std::string& j : s2.tracks) {
    const FreeIntervalList& fs = free.station(s2.id, j);
    for (StoppingPattern p2 : allowed2) {
      MappedIntervalList merged;
      for (int tr : incoming)
        if (net.transitions[size_t(tr)].station_track == j)
          merged = unite(merged, tables.transition_tables[{tr, p2}]);
      merged = intersect(merged, fs);
      if (s2.constraints.arrival_window) {
        auto [a, b] = *s2.constraints.arrival_window;
        merged = intersect(merged, single({a.sec, b.sec}));
      }
      if (p2 == StoppingPattern::stop) {
        Duration dwell{0};
        if (s2.id != req.destination && s2.constraints.min_dwell)
          dwell = *s2.constraints.min_dwell;
        merged = extend(merged, fs, dwell, &tables.arena);
      }
      StationKey key{s2.id, j, p2};
      auto it = tables.station_tables.find(key);
      if (it == tables.station_tables.end() || it->second.empty())
        tables.station_tables[key] = std::move(merged);
      else
        it->second = unite(it->second, merged);
    }
  }
}

DpTables run_dp(const Network& net, const ParameterSet& ps, const FreeIntervalCache& free,
                const InsertionRequest& req, const ArcOrdering& ordering) {
  bool touches_origin = false, touches_destination = false;
  for (int arc : ordering.order) {
    const Segment& seg = net.segments[size_t(arc)];
    touches_origin |= seg.from == req.origin;
    touches_destination |= seg.to == req.destination;
    for (StoppingPattern p1 : allowed_patterns(req, seg.from))
      for (StoppingPattern p2 : allowed_patterns(req, seg.to))
        ps.require_run_time(seg.id, {p1, p2});
    if (allowed_patterns(req, seg.from).empty() || allowed_patterns(req, seg.to).empty())
      throw DataError("request forbids both patterns at a station on the route");
  }
  if (!touches_origin || !touches_destination)
    throw DataError("no covered route joins '" + req.origin + "' to '" + req.destination + "'");
  DpTables tables;
  init_origin(net, free, req, tables);
  for (int arc : ordering.order) process_segment(net, ps, free, req, arc, tables);
  return tables;
}

}  // namespace pathinsert
