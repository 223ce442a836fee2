#include "pathinsert/routing.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace pathinsert {

std::map<int, int64_t> run_time_weights(const Network& net, const ParameterSet& ps) {
  std::map<int, int64_t> w;
  for (size_t i = 0; i < net.segments.size(); ++i) {
    auto d = ps.run_time(net.segments[i].id, {StoppingPattern::run_through,
                                              StoppingPattern::run_through});
    if (d && d->sec > 0) w[int(i)] = d->sec;
  }
  return w;
}

namespace {

bool path_less(const RoutePath& a, const RoutePath& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.stations != b.stations) return a.stations < b.stations;
  return std::lexicographical_compare(
      a.arcs.begin(), a.arcs.end(), b.arcs.begin(), b.arcs.end());
}

// Dijkstra returning the weight-then-lexicographically smallest path, with
// banned arcs and stations. Weights are strictly positive, which makes the
// first settle of a node both distance- and lexicographically optimal.
std::optional<RoutePath> best_path(const Network& net, const std::string& from,
                                   const std::string& to, const std::map<int, int64_t>& weights,
                                   const std::set<int>& banned_arcs,
                                   const std::set<std::string>& banned_stations) {
  struct Entry {
    int64_t dist;
    RoutePath path;
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    return b.path.stations < a.path.stations;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
  std::map<std::string, std::vector<std::pair<int, int64_t>>> adj;
  for (const auto& [arc, w] : weights) {
    if (banned_arcs.count(arc)) continue;
    const Segment& g = net.segments[size_t(arc)];
    if (banned_stations.count(g.from) || banned_stations.count(g.to)) continue;
    adj[g.from].emplace_back(arc, w);
  }
  if (banned_stations.count(from)) return std::nullopt;
  queue.push({0, {{from}, {}, 0}});
  std::set<std::string> settled;
  while (!queue.empty()) {
    Entry cur = queue.top();
    queue.pop();
    const std::string& at = cur.path.stations.back();
    if (!settled.insert(at).second) continue;
    if (at == to) return cur.path;
    for (const auto& [arc, w] : adj[at]) {
      const Segment& g = net.segments[size_t(arc)];
      if (settled.count(g.to)) continue;
      // loopless: skip stations already on this path
      if (std::find(cur.path.stations.begin(), cur.path.stations.end(), g.to) !=
          cur.path.stations.end())
        continue;
      Entry nx = cur;
      nx.dist += w;
      nx.path.weight += w;
      nx.path.stations.push_back(g.to);
      nx.path.arcs.push_back(arc);
      queue.push(std::move(nx));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<RoutePath> k_shortest_paths(const Network& net, const std::string& from,
                                        const std::string& to, int k,
                                        const std::map<int, int64_t>& weights) {
  for (const auto& [arc, w] : weights)
    if (w <= 0) throw DataError("non-positive routing weight on segment '" +
                                net.segments[size_t(arc)].id + "'");
  std::vector<RoutePath> found;
  if (from == to || k < 1) return found;
  auto first = best_path(net, from, to, weights, {}, {});
  if (!first) return found;
  found.push_back(std::move(*first));

  auto cand_less = [](const RoutePath& a, const RoutePath& b) { return path_less(a, b); };
  std::set<RoutePath, decltype(cand_less)> candidates(cand_less);
  while (int(found.size()) < k) {
    const RoutePath& prev = found.back();
    for (size_t spur = 0; spur + 1 < prev.stations.size(); ++spur) {
      std::set<int> banned_arcs;
      std::set<std::string> banned_stations;
      for (const RoutePath& p : found) {
        if (p.arcs.size() > spur &&
            std::equal(p.arcs.begin(), p.arcs.begin() + long(spur), prev.arcs.begin()))
          banned_arcs.insert(p.arcs[spur]);
      }
      for (size_t i = 0; i < spur; ++i) banned_stations.insert(prev.stations[i]);
      auto tail =
          best_path(net, prev.stations[spur], to, weights, banned_arcs, banned_stations);
      if (!tail) continue;
      RoutePath cand;
      cand.stations.assign(prev.stations.begin(), prev.stations.begin() + long(spur));
      cand.stations.insert(cand.stations.end(), tail->stations.begin(), tail->stations.end());
      cand.arcs.assign(prev.arcs.begin(), prev.arcs.begin() + long(spur));
      cand.arcs.insert(cand.arcs.end(), tail->arcs.begin(), tail->arcs.end());
      for (int a : cand.arcs) cand.weight += weights.at(a);
      if (std::find(found.begin(), found.end(), cand) == found.end())
        candidates.insert(std::move(cand));
    }
    if (candidates.empty()) break;
    found.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return found;
}

namespace {

bool reachable(const std::map<int, std::set<int>>& edges, int from, int to) {
  if (from == to) return true;
  std::set<int> seen{from};
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    auto it = edges.find(cur);
    if (it == edges.end()) continue;
    for (int nx : it->second) {
      if (nx == to) return true;
      if (seen.insert(nx).second) stack.push_back(nx);
    }
  }
  return false;
}

}  // namespace

ArcOrdering build_ordering(const std::vector<RoutePath>& paths, const Network& net) {
  ArcOrdering out;
  std::map<int, std::set<int>> edges;  // arc precedences from accepted paths
  std::set<int> arcs;
  for (const RoutePath& p : paths) {
    // The path's arcs must appear in path order; a contradiction shows up as an
    // existing derivation of the opposite order for some pair. Widest span
    // first, so the report names the outermost clashing pair.
    std::optional<std::pair<int, int>> clash;
    for (size_t span = p.arcs.size(); span-- > 1 && !clash;)
      for (size_t i = 0; i + span < p.arcs.size() && !clash; ++i)
        if (p.arcs[i] != p.arcs[i + span] && reachable(edges, p.arcs[i + span], p.arcs[i]))
          clash = {p.arcs[i], p.arcs[i + span]};
    if (clash) {
      const std::string& a = net.segments[size_t(clash->first)].id;
      const std::string& b = net.segments[size_t(clash->second)].id;
      std::string vias;
      for (const std::string& s : p.stations) vias += (vias.empty() ? "" : "-") + s;
      out.report.push_back("rejected path " + vias + ": needs arc '" + a + "' before '" + b +
                           "' but accepted paths force '" + b + "' before '" + a + "'");
      continue;
    }
    for (size_t i = 0; i + 1 < p.arcs.size(); ++i) edges[p.arcs[i]].insert(p.arcs[i + 1]);
    for (int a : p.arcs) arcs.insert(a);
    out.covered.push_back(p);
  }
  // Kahn with the lexicographically smallest segment id first.
  std::map<int, int> indeg;
  for (int a : arcs) indeg[a] = 0;
  for (const auto& [from, tos] : edges)
    for (int to : tos)
      if (arcs.count(from) && arcs.count(to)) ++indeg[to];
  auto id_less = [&](int x, int y) { return net.segments[size_t(x)].id < net.segments[size_t(y)].id; };
  std::set<int, decltype(id_less)> ready(id_less);
  for (const auto& [a, d] : indeg)
    if (d == 0) ready.insert(a);
  while (!ready.empty()) {
    int a = *ready.begin();
    ready.erase(ready.begin());
    out.order.push_back(a);
    auto it = edges.find(a);
    if (it == edges.end()) continue;
    for (int to : it->second)
      if (arcs.count(to) && --indeg[to] == 0) ready.insert(to);
  }
  if (out.order.size() != arcs.size())
    throw DataError("internal: accepted paths produced a cyclic arc ordering");
  return out;
}

Network prune(const Network& net, const ArcOrdering& ordering) {
  std::set<int> arcs(ordering.order.begin(), ordering.order.end());
  std::set<std::string> stations;
  for (int a : arcs) {
    stations.insert(net.segments[size_t(a)].from);
    stations.insert(net.segments[size_t(a)].to);
  }
  Network out;
  for (const Station& s : net.stations)
    if (stations.count(s.id)) out.stations.push_back(s);
  std::set<std::string> seg_ids;
  for (size_t i = 0; i < net.segments.size(); ++i)
    if (arcs.count(int(i))) {
      out.segments.push_back(net.segments[i]);
      seg_ids.insert(net.segments[i].id);
    }
  for (const Transition& t : net.transitions)
    if (stations.count(t.station) && seg_ids.count(t.segment)) out.transitions.push_back(t);
  out.finalize();
  for (const auto& [a, b] : net.conflicts) {
    int ia = out.transition_id(net.transitions[size_t(a)]);
    int ib = out.transition_id(net.transitions[size_t(b)]);
    if (ia >= 0 && ib >= 0) out.conflicts.emplace_back(ia, ib);
  }
  return out;
}

}  // namespace pathinsert
