#include "pathinsert/paths.hpp"

#include <algorithm>
#include <sstream>

namespace pathinsert {

std::vector<FrontierPoint> frontier(const DpTables& tables, const Network& net,
                                    const std::string& destination) {
  const Station& v = net.station(destination);
  MappedIntervalList merged;
  for (const std::string& j : v.tracks)
    merged = unite(merged, tables.station(v.id, j, StoppingPattern::stop));

  // A point survives iff no earlier-or-equal arrival allows a departure at
  // least as late: scan arrivals in order, keeping the running departure max.
  std::vector<FrontierPoint> out;
  int64_t best = INT64_MIN;
  for (const MappedInterval& m : merged.items) {
    if (m.slope == 0) {
      if (m.dep_lo > best) {
        out.push_back({m.dep_lo, m.lo, 0});
        best = m.dep_lo;
      }
      continue;
    }
    int64_t t0 = m.lo;
    if (best != INT64_MIN && m.dep_lo <= best) t0 = m.lo + (best - m.dep_lo) + 1;
    if (t0 > m.hi) continue;
    out.push_back({m.dep(t0), t0, m.hi - t0});
    best = m.dep(m.hi);
  }
  return out;
}

namespace {

// Earliest instant of the snapshot whose mapped departure equals D.
int64_t snapshot_preimage(const ProvNode& n, int64_t dep) {
  if (n.slope == 1) return n.lo + (dep - n.dep_lo);
  return n.lo;
}

}  // namespace

TrainPath reconstruct_partial(const DpTables& tables, const Network& net,
                              const InsertionRequest& req, const MappedInterval& item,
                              int64_t presence) {
  TrainPath path;
  const int64_t target_dep = item.dep(presence);
  path.summary = {target_dep, presence, 0};
  int64_t t = presence;
  int64_t pending_departure = presence;
  int32_t cur = item.prov;
  std::vector<PathStationEvent> rev_stations;
  std::vector<PathSegmentEvent> rev_segments;
  while (true) {
    if (cur < 0) throw DataError("internal: provenance chain broke during reconstruction");
    const ProvNode& n = tables.arena.at(cur);
    switch (n.kind) {
      case ProvNode::Kind::Wait:
        t = snapshot_preimage(n, target_dep);
        if (t + n.param > pending_departure)
          throw DataError("internal: reconstructed dwell below the required minimum");
        cur = n.parent;
        break;
      case ProvNode::Kind::Arrive: {
        const Transition& tr = net.transitions[size_t(n.transition)];
        rev_stations.push_back({tr.station, TimePoint{t}, TimePoint{pending_departure},
                                tr.station_track, StoppingPattern(n.pattern)});
        rev_segments.push_back({tr.segment, tr.segment_track, TimePoint{0}, TimePoint{t}});
        cur = n.parent;
        break;
      }
      case ProvNode::Kind::Full:
        t -= n.param;
        rev_segments.back().enter = TimePoint{t};
        cur = n.parent;
        break;
      case ProvNode::Kind::Slow:
        t = snapshot_preimage(n, target_dep);
        rev_segments.back().enter = TimePoint{t};
        cur = n.parent;
        break;
      case ProvNode::Kind::Depart:
        pending_departure = t;
        cur = n.parent;
        break;
      case ProvNode::Kind::Origin: {
        const Station& u = net.station(req.origin);
        rev_stations.push_back({u.id, TimePoint{t}, TimePoint{pending_departure},
                                u.tracks[size_t(n.track)], StoppingPattern::stop});
        if (t != target_dep)
          throw DataError("internal: reconstructed origin departure disagrees with the frontier");
        path.stations.assign(rev_stations.rbegin(), rev_stations.rend());
        path.segments.assign(rev_segments.rbegin(), rev_segments.rend());
        return path;
      }
    }
  }
}

TrainPath reconstruct(const DpTables& tables, const Network& net, const InsertionRequest& req,
                      const FrontierPoint& point) {
  const Station& v = net.station(req.destination);
  const MappedInterval* item = nullptr;
  for (const std::string& j : v.tracks) {
    const MappedIntervalList& l = tables.station(v.id, j, StoppingPattern::stop);
    if (l.defined(point.arrival) && l.dep_at(point.arrival) == point.departure) {
      for (const MappedInterval& m : l.items)
        if (m.lo <= point.arrival && point.arrival <= m.hi) item = &m;
      break;
    }
  }
  if (!item) throw DataError("internal: frontier point has no matching destination item");
  TrainPath path = reconstruct_partial(tables, net, req, *item, point.arrival);
  path.summary = point;
  return path;
}

std::vector<std::string> verify_path(const TrainPath& path, const Network& net,
                                     const Timetable& tt, const ParameterSet& ps) {
  std::vector<std::string> out;
  ConflictChecker check(net, tt, ps);
  if (path.stations.empty()) return {"path has no stations"};
  if (path.segments.size() + 1 != path.stations.size())
    return {"path needs exactly one segment between consecutive stations"};

  for (size_t i = 0; i < path.stations.size(); ++i) {
    const PathStationEvent& ev = path.stations[i];
    auto si = net.station_index.find(ev.station);
    if (si == net.station_index.end()) {
      out.push_back("unknown station '" + ev.station + "'");
      continue;
    }
    const Station& s = net.stations[size_t(si->second)];
    if (std::find(s.tracks.begin(), s.tracks.end(), ev.track) == s.tracks.end())
      out.push_back("station '" + ev.station + "' has no track '" + ev.track + "'");
    if (ev.departure < ev.arrival)
      out.push_back("departure before arrival at '" + ev.station + "'");
    if (ev.pattern == StoppingPattern::run_through && ev.arrival != ev.departure)
      out.push_back("run-through at '" + ev.station + "' must not dwell");
    if (!check.station_range(ev.station, ev.track, ev.arrival.sec, ev.departure.sec))
      out.push_back("station margin violated on track " + ev.track + " of '" + ev.station +
                    "' during [" + std::to_string(ev.arrival.sec) + ", " +
                    std::to_string(ev.departure.sec) + "]");
  }

  for (size_t i = 0; i < path.segments.size(); ++i) {
    const PathSegmentEvent& sv = path.segments[i];
    const PathStationEvent& from = path.stations[i];
    const PathStationEvent& to = path.stations[i + 1];
    auto gi = net.segment_index.find(sv.segment);
    if (gi == net.segment_index.end()) {
      out.push_back("unknown segment '" + sv.segment + "'");
      continue;
    }
    const Segment& g = net.segments[size_t(gi->second)];
    if (g.from != from.station || g.to != to.station)
      out.push_back("segment '" + g.id + "' does not join '" + from.station + "' to '" +
                    to.station + "'");
    if (std::find(g.tracks.begin(), g.tracks.end(), sv.track) == g.tracks.end())
      out.push_back("segment '" + g.id + "' has no track '" + sv.track + "'");
    if (sv.enter != from.departure || sv.exit != to.arrival)
      out.push_back("segment '" + g.id + "' times disagree with the station events");

    PatternPair pp{from.pattern, to.pattern};
    auto d = ps.run_time(g.id, pp);
    if (!d)
      out.push_back("no running time for segment '" + g.id + "' with pattern " + pp.label());
    else if (sv.exit.sec - sv.enter.sec < d->sec)
      out.push_back("running time violated on '" + g.id + "': " +
                    std::to_string(sv.exit.sec - sv.enter.sec) + " s < " +
                    std::to_string(d->sec) + " s for pattern " + pp.label());

    int dep_tr = net.transition_id(
        {from.station, from.track, g.id, sv.track, TransitionDir::departing});
    if (dep_tr < 0)
      out.push_back("no declared transition from '" + from.station + ":" + from.track +
                    "' to '" + g.id + ":" + sv.track + "'");
    else if (!check.transition_instant(dep_tr, sv.enter.sec))
      out.push_back("transition margin violated leaving '" + from.station + "' at " +
                    std::to_string(sv.enter.sec));
    int arr_tr =
        net.transition_id({to.station, to.track, g.id, sv.track, TransitionDir::arriving});
    if (arr_tr < 0)
      out.push_back("no declared transition from '" + g.id + ":" + sv.track + "' to '" +
                    to.station + ":" + to.track + "'");
    else if (!check.transition_instant(arr_tr, sv.exit.sec))
      out.push_back("transition margin violated arriving at '" + to.station + "' at " +
                    std::to_string(sv.exit.sec));

    if (!check.segment_traversal(g.id, sv.track, sv.enter.sec, sv.exit.sec))
      out.push_back("headway violated on segment '" + g.id + "' track " + sv.track +
                    " during [" + std::to_string(sv.enter.sec) + ", " +
                    std::to_string(sv.exit.sec) + "]");
  }
  return out;
}

std::string format_path_records(const std::vector<TrainPath>& paths, bool iso) {
  auto fmt = [&](TimePoint t) { return iso ? format_time(t) : format_seconds(t); };
  std::ostringstream out;
  for (size_t i = 0; i < paths.size(); ++i) {
    const TrainPath& p = paths[i];
    out << "path " << (i + 1) << " dep " << fmt(TimePoint{p.summary.departure}) << " arr "
        << fmt(TimePoint{p.summary.arrival}) << " slack " << p.summary.slack << "\n";
    for (size_t e = 0; e < p.stations.size(); ++e) {
      const PathStationEvent& ev = p.stations[e];
      out << "station " << ev.station << " arr " << fmt(ev.arrival) << " dep "
          << fmt(ev.departure) << " track " << ev.track << " pattern "
          << pattern_char(ev.pattern) << "\n";
      if (e < p.segments.size()) {
        const PathSegmentEvent& sv = p.segments[e];
        out << "segment " << sv.segment << " track " << sv.track << " enter " << fmt(sv.enter)
            << " exit " << fmt(sv.exit) << "\n";
      }
    }
    out << "end\n";
  }
  return out.str();
}

std::vector<TrainPath> parse_path_records(const std::string& text) {
  std::vector<TrainPath> out;
  std::istringstream in(text);
  std::string line;
  TrainPath cur;
  bool open = false;
  int no = 0;
  auto flush = [&]() {
    if (open) out.push_back(cur);
    cur = {};
    open = false;
  };
  while (std::getline(in, line)) {
    ++no;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    auto expect = [&](const std::string& want) {
      std::string got;
      if (!(ls >> got) || got != want)
        throw ParseError("line " + std::to_string(no) + ": expected '" + want + "'");
    };
    std::string tok;
    if (kw == "path") {
      flush();
      open = true;
      int idx;
      ls >> idx;
      expect("dep");
      ls >> tok;
      cur.summary.departure = parse_time(tok).sec;
      expect("arr");
      ls >> tok;
      cur.summary.arrival = parse_time(tok).sec;
      expect("slack");
      ls >> cur.summary.slack;
    } else if (kw == "station") {
      PathStationEvent ev;
      ls >> ev.station;
      expect("arr");
      ls >> tok;
      ev.arrival = parse_time(tok);
      expect("dep");
      ls >> tok;
      ev.departure = parse_time(tok);
      expect("track");
      ls >> ev.track;
      expect("pattern");
      ls >> tok;
      ev.pattern = tok == "S" ? StoppingPattern::stop : StoppingPattern::run_through;
      cur.stations.push_back(std::move(ev));
    } else if (kw == "segment") {
      PathSegmentEvent sv;
      ls >> sv.segment;
      expect("track");
      ls >> sv.track;
      expect("enter");
      ls >> tok;
      sv.enter = parse_time(tok);
      expect("exit");
      ls >> tok;
      sv.exit = parse_time(tok);
      cur.segments.push_back(std::move(sv));
    } else if (kw == "end") {
      flush();
    } else if (!open) {
      // report header lines (timings, frontier summary) may precede the records
      continue;
    } else {
      throw ParseError("line " + std::to_string(no) + ": unknown path record '" + kw + "'");
    }
  }
  flush();
  return out;
}

}  // namespace pathinsert
