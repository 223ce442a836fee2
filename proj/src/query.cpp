#include "pathinsert/query.hpp"

#include <chrono>
#include <sstream>

namespace pathinsert {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void check_request(const Network& net, const InsertionRequest& req) {
  if (req.origin == req.destination) throw DataError("origin equals destination");
  if (!(req.window_start < req.window_end)) throw DataError("empty insertion window");
  net.station(req.origin);
  net.station(req.destination);
  if (req.route_count < 1) throw DataError("route count must be at least 1");
  for (const std::string& s : req.no_stop)
    if (req.require_stop.count(s))
      throw DataError("station '" + s + "' both forbids and requires a stop");
}

InsertionResult insert_train(const Network& net, const Timetable& tt, const ParameterSet& ps,
                             const InsertionRequest& req, const QueryOptions& opt) {
  check_request(net, req);
  InsertionResult res;

  auto weights = run_time_weights(net, ps);
  auto routes = k_shortest_paths(net, req.origin, req.destination, req.route_count, weights);
  if (routes.empty())
    throw DataError("no route from '" + req.origin + "' to '" + req.destination + "'");
  res.ordering = build_ordering(routes, net);
  res.report.routing_report = res.ordering.report;

  FreeIntervalCache free(net, tt, ps, {req.window_start.sec, req.window_end.sec});

  // Preprocessing: free intervals for every element the sweep can touch. Kept
  // apart from the query phase, which assumes them available.
  auto t0 = std::chrono::steady_clock::now();
  std::set<std::string> route_stations;
  for (int arc : res.ordering.order) {
    const Segment& seg = net.segments[size_t(arc)];
    route_stations.insert(seg.from);
    route_stations.insert(seg.to);
    for (const std::string& k : seg.tracks) free.segment(seg.id, k);
    for (int tr : net.transitions_at(seg.from, seg.id, TransitionDir::departing))
      free.transition(tr);
    for (int tr : net.transitions_at(seg.to, seg.id, TransitionDir::arriving))
      free.transition(tr);
  }
  for (const std::string& sid : route_stations)
    for (const std::string& j : net.station(sid).tracks) free.station(sid, j);
  res.report.preprocess_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto tables = std::make_shared<DpTables>(run_dp(net, ps, free, req, res.ordering));
  res.frontier = frontier(*tables, net, req.destination);
  res.report.dp_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  for (const FrontierPoint& p : res.frontier)
    res.paths.push_back(reconstruct(*tables, net, req, p));
  res.report.reconstruct_ms = ms_since(t0);

  if (opt.verify)
    for (const TrainPath& p : res.paths) res.violations.push_back(verify_path(p, net, tt, ps));

  for (const std::string& sid : route_stations) {
    RunReport::LocationSize loc;
    loc.location = sid;
    for (const std::string& j : net.station(sid).tracks) {
      size_t items = tables->station(sid, j, StoppingPattern::stop).size() +
                     tables->station(sid, j, StoppingPattern::run_through).size();
      loc.table_items = std::max(loc.table_items, items);
      loc.free_intervals = std::max(loc.free_intervals, free.station(sid, j).v.size());
    }
    res.report.table_sizes.push_back(std::move(loc));
  }

  if (opt.keep_tables) res.tables = tables;
  return res;
}

std::string format_free_intervals(const Network& net, const Timetable& tt,
                                  const ParameterSet& ps, const ArcOrdering& ordering,
                                  FreeInterval window) {
  FreeIntervalCache free(net, tt, ps, window);
  std::ostringstream out;
  std::set<std::string> seen;
  for (int arc : ordering.order) {
    const Segment& seg = net.segments[size_t(arc)];
    for (const std::string& sid : {seg.from, seg.to}) {
      if (!seen.insert(sid).second) continue;
      for (const std::string& j : net.station(sid).tracks)
        out << "free station " << sid << " track " << j << " : "
            << to_string(free.station(sid, j)) << "\n";
    }
    for (int tr : net.transitions_at(seg.from, seg.id, TransitionDir::departing))
      out << "free transition " << to_string(net.transitions[size_t(tr)]) << " : "
          << to_string(free.transition(tr)) << "\n";
    for (const std::string& k : seg.tracks) {
      out << "free segment " << seg.id << " track " << k << " :";
      for (const FreePair& p : free.segment(seg.id, k).v)
        out << " ([" << p.entry.lo << "," << p.entry.hi << "]->[" << p.exit.lo << ","
            << p.exit.hi << "])";
      out << "\n";
    }
    for (int tr : net.transitions_at(seg.to, seg.id, TransitionDir::arriving))
      out << "free transition " << to_string(net.transitions[size_t(tr)]) << " : "
          << to_string(free.transition(tr)) << "\n";
  }
  return out.str();
}

std::string format_tables(const DpTables& tables, const Network& net) {
  (void)net;
  std::ostringstream out;
  for (const auto& [key, list] : tables.station_tables) {
    const auto& [s, j, p] = key;
    out << "station " << s << " track " << j << " " << pattern_char(p) << " : "
        << to_string(list) << "\n";
  }
  for (const auto& [key, list] : tables.transition_tables) {
    out << "transition " << to_string(net.transitions[size_t(key.first)]) << " "
        << pattern_char(key.second) << " : " << to_string(list) << "\n";
  }
  for (const auto& [key, list] : tables.segment_tables) {
    const auto& [g, k, p] = key;
    out << "segment " << g << " track " << k << " " << pattern_char(p) << " : "
        << to_string(list) << "\n";
  }
  return out.str();
}

}  // namespace pathinsert
