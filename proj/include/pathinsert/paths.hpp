#pragma once

#include "pathinsert/checks.hpp"
#include "pathinsert/dp.hpp"

namespace pathinsert {

// One non-dominated departure/arrival combination. A positive slack means a
// whole family of parallel alternatives: departing up to `slack` seconds later
// arrives exactly that much later.
struct FrontierPoint {
  int64_t departure = 0;
  int64_t arrival = 0;
  int64_t slack = 0;
  auto operator<=>(const FrontierPoint&) const = default;
};

struct PathStationEvent {
  std::string station;
  TimePoint arrival;
  TimePoint departure;
  std::string track;
  StoppingPattern pattern = StoppingPattern::stop;
};

struct PathSegmentEvent {
  std::string segment;
  std::string track;
  TimePoint enter;
  TimePoint exit;
};

struct TrainPath {
  std::vector<PathStationEvent> stations;
  std::vector<PathSegmentEvent> segments;
  FrontierPoint summary;
};

// Earliest arrival per feasible origin departure, reduced to the mutually
// non-dominated set. Empty when the destination was never reached.
std::vector<FrontierPoint> frontier(const DpTables& tables, const Network& net,
                                    const std::string& destination);

// Concrete path behind a frontier point, walked backwards through the table
// provenance. Ties go to the first track in declaration order and to the
// earliest instant a location can be reached.
TrainPath reconstruct(const DpTables& tables, const Network& net, const InsertionRequest& req,
                      const FrontierPoint& point);

// Partial path behind one station-table item at presence instant t: the
// journey from the origin up to that station. Every item in a filled table
// must walk back to a conflict-free prefix, which tests probe directly.
TrainPath reconstruct_partial(const DpTables& tables, const Network& net,
                              const InsertionRequest& req, const MappedInterval& item,
                              int64_t presence);

// From-scratch re-check of the path against every margin and running time.
// Returns one message per violation; empty means conflict-free.
std::vector<std::string> verify_path(const TrainPath& path, const Network& net,
                                     const Timetable& tt, const ParameterSet& ps);

std::string format_path_records(const std::vector<TrainPath>& paths, bool iso_times);
std::vector<TrainPath> parse_path_records(const std::string& text);

}  // namespace pathinsert
