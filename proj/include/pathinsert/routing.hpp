#pragma once

#include <map>

#include "pathinsert/model.hpp"

namespace pathinsert {

// A u-v path through the station graph: stations visited and the directed
// segments (indexes into Network::segments) between them.
struct RoutePath {
  std::vector<std::string> stations;
  std::vector<int> arcs;
  int64_t weight = 0;
  bool operator==(const RoutePath& o) const { return arcs == o.arcs; }
};

// Weight per usable segment; segments without an entry cannot be routed over.
// Weights must be strictly positive.
std::map<int, int64_t> run_time_weights(const Network& net, const ParameterSet& ps);

// Loopless shortest paths in non-decreasing weight, ties broken by the station
// id sequence and then the segment id sequence. Returns fewer than k when the
// graph has fewer simple paths.
std::vector<RoutePath> k_shortest_paths(const Network& net, const std::string& from,
                                        const std::string& to, int k,
                                        const std::map<int, int64_t>& weights);

// Permutation of the covered arcs; every covered path's arcs appear in it in
// path order, so a single sweep can process all of them.
struct ArcOrdering {
  std::vector<int> order;
  std::vector<RoutePath> covered;
  std::vector<std::string> report;  // one entry per rejected path
};

// Greedy: paths are considered in the given order and skipped when their arc
// precedences contradict the already-accepted ones. The first path is never
// rejected.
ArcOrdering build_ordering(const std::vector<RoutePath>& paths, const Network& net);

// Restriction of the network to covered arcs and their incident stations.
Network prune(const Network& net, const ArcOrdering& ordering);

}  // namespace pathinsert
