#include "pathinsert/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathinsert {

std::string to_string(const Transition& t) {
  return (t.dir == TransitionDir::departing)
             ? t.station + ":" + t.station_track + "->" + t.segment + ":" + t.segment_track
             : t.segment + ":" + t.segment_track + "->" + t.station + ":" + t.station_track;
}

void Network::finalize() {
  station_index.clear();
  segment_index.clear();
  transition_index.clear();
  for (size_t i = 0; i < stations.size(); ++i) {
    const Station& s = stations[i];
    if (s.tracks.empty()) throw DataError("station '" + s.id + "' has no tracks");
    if (!station_index.emplace(s.id, int(i)).second)
      throw DataError("duplicate station id '" + s.id + "'");
  }
  for (size_t i = 0; i < segments.size(); ++i) {
    Segment& g = segments[i];
    if (g.from == g.to) throw DataError("segment '" + g.id + "' loops on '" + g.from + "'");
    if (g.tracks.empty()) throw DataError("segment '" + g.id + "' has no tracks");
    if (g.blocks < 1) throw DataError("segment '" + g.id + "' has non-positive block count");
    if (!station_index.count(g.from))
      throw DataError("segment '" + g.id + "' references unknown station '" + g.from + "'");
    if (!station_index.count(g.to))
      throw DataError("segment '" + g.id + "' references unknown station '" + g.to + "'");
    if (g.resource.empty())
      g.resource = g.from < g.to ? g.from + "|" + g.to : g.to + "|" + g.from;
    if (!segment_index.emplace(g.id, int(i)).second)
      throw DataError("duplicate segment id '" + g.id + "'");
  }
  auto has_track = [](const std::vector<std::string>& tracks, const std::string& t) {
    return std::find(tracks.begin(), tracks.end(), t) != tracks.end();
  };
  for (size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    auto si = station_index.find(t.station);
    if (si == station_index.end())
      throw DataError("transition references unknown station '" + t.station + "'");
    auto gi = segment_index.find(t.segment);
    if (gi == segment_index.end())
      throw DataError("transition references unknown segment '" + t.segment + "'");
    const Station& s = stations[size_t(si->second)];
    const Segment& g = segments[size_t(gi->second)];
    if (!has_track(s.tracks, t.station_track))
      throw DataError("transition references missing track '" + t.station_track +
                      "' at station '" + s.id + "'");
    if (!has_track(g.tracks, t.segment_track))
      throw DataError("transition references missing track '" + t.segment_track +
                      "' at segment '" + g.id + "'");
    if (g.from != t.station && g.to != t.station)
      throw DataError("transition at '" + t.station + "' references non-incident segment '" +
                      g.id + "'");
    if (!transition_index.emplace(t, int(i)).second)
      throw DataError("duplicate transition " + to_string(t));
  }
}

const Station& Network::station(const std::string& id) const {
  auto it = station_index.find(id);
  if (it == station_index.end()) throw DataError("unknown station '" + id + "'");
  return stations[size_t(it->second)];
}

const Segment& Network::segment(const std::string& id) const {
  auto it = segment_index.find(id);
  if (it == segment_index.end()) throw DataError("unknown segment '" + id + "'");
  return segments[size_t(it->second)];
}

int Network::transition_id(const Transition& t) const {
  auto it = transition_index.find(t);
  return it == transition_index.end() ? -1 : it->second;
}

std::vector<int> Network::transitions_at(const std::string& station, const std::string& segment,
                                         TransitionDir dir) const {
  std::vector<int> out;
  for (size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    if (t.station == station && (segment.empty() || t.segment == segment) && t.dir == dir)
      out.push_back(int(i));
  }
  return out;
}

std::vector<int> Network::conflict_set(int transition) const {
  std::vector<int> out{transition};
  for (const auto& [a, b] : conflicts) {
    if (a == transition) out.push_back(b);
    if (b == transition) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Network::unreachable_stations() const {
  if (stations.empty()) return {};
  // Undirected reachability over segment endpoints, seeded at the first station
  // touched by a segment. Stations never referenced by segments are isolated by
  // definition and only reported when segments exist.
  if (segments.empty()) return {};
  std::map<std::string, std::vector<std::string>> adj;
  for (const Segment& g : segments) {
    adj[g.from].push_back(g.to);
    adj[g.to].push_back(g.from);
  }
  std::set<std::string> seen;
  std::vector<std::string> stack{segments.front().from};
  seen.insert(stack.front());
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto& nx : adj[cur])
      if (seen.insert(nx).second) stack.push_back(nx);
  }
  std::vector<std::string> out;
  for (const auto& [id, _] : adj)
    if (!seen.count(id)) out.push_back(id);
  return out;
}

void Timetable::derive(const Network& net) {
  station_use.clear();
  segment_use.clear();
  transition_use.clear();
  for (size_t ti = 0; ti < trains.size(); ++ti) {
    Train& tr = trains[ti];
    std::set<std::string> visited;
    TimePoint prev{INT64_MIN};
    for (size_t e = 0; e < tr.events.size(); ++e) {
      TrainEvent& ev = tr.events[e];
      const Station& s = net.station(ev.station);
      if (std::find(s.tracks.begin(), s.tracks.end(), ev.track) == s.tracks.end())
        throw DataError("train '" + tr.id + "' uses missing track '" + ev.track +
                        "' at station '" + ev.station + "'");
      if (!visited.insert(ev.station).second)
        throw DataError("train '" + tr.id + "' visits station '" + ev.station +
                        "' more than once (each station may be visited at most once)");
      if (ev.departure < ev.arrival || ev.arrival < prev)
        throw DataError("train '" + tr.id + "' has non-monotone times at station '" +
                        ev.station + "'");
      prev = ev.departure;
      station_use[{ev.station, ev.track}].push_back(
          {int(ti), ev.arrival, ev.departure});

      if (e + 1 == tr.events.size()) {
        if (!ev.next_segment.empty())
          throw DataError("train '" + tr.id + "' names a segment after its last station");
        continue;
      }
      const TrainEvent& nx = tr.events[e + 1];
      // Resolve the segment towards the next station when not explicit.
      if (ev.next_segment.empty()) {
        std::vector<const Segment*> options;
        for (const Segment& g : net.segments)
          if (g.from == ev.station && g.to == nx.station) options.push_back(&g);
        if (options.empty())
          throw DataError("train '" + tr.id + "': no segment joins '" + ev.station + "' to '" +
                          nx.station + "'");
        if (options.size() > 1)
          throw DataError("train '" + tr.id + "': ambiguous segment from '" + ev.station +
                          "' to '" + nx.station + "', name it explicitly");
        ev.next_segment = options.front()->id;
      }
      const Segment& g = net.segment(ev.next_segment);
      if (g.from != ev.station || g.to != nx.station)
        throw DataError("train '" + tr.id + "': segment '" + g.id + "' does not join '" +
                        ev.station + "' to '" + nx.station + "'");
      if (ev.next_segment_track.empty()) {
        if (g.tracks.size() > 1)
          throw DataError("train '" + tr.id + "': segment '" + g.id +
                          "' has several tracks, name one explicitly");
        ev.next_segment_track = g.tracks.front();
      }
      if (std::find(g.tracks.begin(), g.tracks.end(), ev.next_segment_track) == g.tracks.end())
        throw DataError("train '" + tr.id + "' uses missing track '" + ev.next_segment_track +
                        "' at segment '" + g.id + "'");
      segment_use[{g.resource, ev.next_segment_track}].push_back(
          {int(ti), net.segment_index.at(g.id), ev.departure, nx.arrival});

      int dep_tr = net.transition_id(
          {ev.station, ev.track, g.id, ev.next_segment_track, TransitionDir::departing});
      if (dep_tr >= 0) transition_use[dep_tr].push_back({int(ti), ev.departure,
                                                         TransitionDir::departing});
      int arr_tr = net.transition_id(
          {nx.station, nx.track, g.id, ev.next_segment_track, TransitionDir::arriving});
      if (arr_tr >= 0) transition_use[arr_tr].push_back({int(ti), nx.arrival,
                                                         TransitionDir::arriving});
    }
  }
  for (auto& [k, v] : station_use)
    std::sort(v.begin(), v.end(), [](const StationOccupation& a, const StationOccupation& b) {
      return std::tie(a.arrival, a.departure, a.train) < std::tie(b.arrival, b.departure, b.train);
    });
  for (auto& [k, v] : segment_use)
    std::sort(v.begin(), v.end(), [](const SegmentOccupation& a, const SegmentOccupation& b) {
      return std::tie(a.enter, a.exit, a.train) < std::tie(b.enter, b.exit, b.train);
    });
  for (auto& [k, v] : transition_use)
    std::sort(v.begin(), v.end(), [](const TransitionMovement& a, const TransitionMovement& b) {
      return std::tie(a.instant, a.train) < std::tie(b.instant, b.train);
    });
}

namespace {

bool wild_eq(const std::string& pat, const std::string& val) { return pat == "*" || pat == val; }

}  // namespace

MarginPair ParameterSet::resolve_headway(const std::string& train,
                                         const std::string& segment) const {
  int best = -1;
  MarginPair out{headway_default, headway_default};
  for (const auto& e : headways) {
    if (!wild_eq(e.train, train) || !wild_eq(e.segment, segment)) continue;
    int score = int(e.train != "*") + int(e.segment != "*");
    if (score >= best) {
      best = score;
      out = e.m;
    }
  }
  return out;
}

MarginPair ParameterSet::resolve_station(const std::string& train, const std::string& station,
                                         const std::string& track) const {
  int best = -1;
  MarginPair out{station_default, station_default};
  for (const auto& e : station_margins) {
    if (!wild_eq(e.train, train) || !wild_eq(e.station, station) || !wild_eq(e.track, track))
      continue;
    int score = int(e.train != "*") + int(e.station != "*") + int(e.track != "*");
    if (score >= best) {
      best = score;
      out = e.m;
    }
  }
  return out;
}

MarginPair ParameterSet::resolve_transition(const std::string& train,
                                            const Transition& of_inserted,
                                            TransitionDir existing_kind) const {
  TransitionDir inserted_kind = of_inserted.dir;
  MarginPair out;
  // The short block margin applies when the earlier action is an arrival and
  // the later one a departure.
  out.after_existing = (existing_kind == TransitionDir::arriving &&
                        inserted_kind == TransitionDir::departing)
                           ? transition_block
                           : transition_default;
  out.before_existing = (inserted_kind == TransitionDir::arriving &&
                         existing_kind == TransitionDir::departing)
                            ? transition_block
                            : transition_default;
  int best = -1;
  const std::string dir_str =
      of_inserted.dir == TransitionDir::departing ? "departing" : "arriving";
  for (const auto& e : transition_margins) {
    if (!wild_eq(e.train, train) || !wild_eq(e.station, of_inserted.station) ||
        !wild_eq(e.station_track, of_inserted.station_track) ||
        !wild_eq(e.segment, of_inserted.segment) ||
        !wild_eq(e.segment_track, of_inserted.segment_track) || !wild_eq(e.dir, dir_str))
      continue;
    int score = int(e.train != "*") + int(e.station != "*") + int(e.station_track != "*") +
                int(e.segment != "*") + int(e.segment_track != "*") + int(e.dir != "*");
    if (score >= best) {
      best = score;
      out = e.m;
    }
  }
  return out;
}

std::optional<Duration> ParameterSet::run_time(const std::string& segment, PatternPair p) const {
  auto it = run_times.find({segment, p.label()});
  if (it == run_times.end()) return std::nullopt;
  return it->second;
}

Duration ParameterSet::require_run_time(const std::string& segment, PatternPair p) const {
  auto v = run_time(segment, p);
  if (!v)
    throw DataError("no running time for segment '" + segment + "' with pattern " + p.label());
  return *v;
}

}  // namespace pathinsert
