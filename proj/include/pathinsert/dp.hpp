#pragma once

#include "pathinsert/free_intervals.hpp"
#include "pathinsert/intervals.hpp"
#include "pathinsert/model.hpp"
#include "pathinsert/routing.hpp"

namespace pathinsert {

using StationKey = std::tuple<std::string, std::string, StoppingPattern>;  // station, track, p
using SegmentKey = std::tuple<std::string, std::string, StoppingPattern>;  // segment, track, p

struct DpTables {
  std::map<StationKey, MappedIntervalList> station_tables;
  std::map<std::pair<int, StoppingPattern>, MappedIntervalList> transition_tables;
  std::map<SegmentKey, MappedIntervalList> segment_tables;
  ProvArena arena;

  const MappedIntervalList& station(const std::string& s, const std::string& track,
                                    StoppingPattern p) const;
};

// Patterns usable at a station under the request policy. Origin and
// destination are always stop-only.
std::vector<StoppingPattern> allowed_patterns(const InsertionRequest& req, const std::string& s);

// Seeds the origin tables: within each free interval the train can leave at
// any instant, and leaving is what defines its origin departure.
void init_origin(const Network& net, const FreeIntervalCache& free, const InsertionRequest& req,
                 DpTables& tables);

// One sweep step over a directed segment: filter through the departing
// transitions, merge per segment track, enforce the minimum running time,
// filter through the arriving transitions, then merge, filter and extend the
// arrival station tables.
void process_segment(const Network& net, const ParameterSet& ps, const FreeIntervalCache& free,
                     const InsertionRequest& req, int arc, DpTables& tables);

// Full sweep over the arc ordering. Throws DataError when a needed running
// time is missing or the origin/destination is not on the covered graph.
DpTables run_dp(const Network& net, const ParameterSet& ps, const FreeIntervalCache& free,
                const InsertionRequest& req, const ArcOrdering& ordering);

}  // namespace pathinsert
