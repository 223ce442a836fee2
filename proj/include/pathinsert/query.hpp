#pragma once

#include <memory>

#include "pathinsert/oracle.hpp"
#include "pathinsert/paths.hpp"

namespace pathinsert {

struct RunReport {
  double preprocess_ms = 0;   // free-interval computation for the route
  double dp_ms = 0;           // sweep + frontier
  double reconstruct_ms = 0;  // path extraction
  // Fig-style profile: per station, table items summed over patterns and the
  // largest count over its tracks; free-interval count alongside for scale.
  struct LocationSize {
    std::string location;
    size_t table_items = 0;
    size_t free_intervals = 0;
  };
  std::vector<LocationSize> table_sizes;
  std::vector<std::string> routing_report;
};

struct InsertionResult {
  std::vector<FrontierPoint> frontier;
  std::vector<TrainPath> paths;
  std::vector<std::vector<std::string>> violations;  // per path, from verify_path
  RunReport report;
  ArcOrdering ordering;
  std::shared_ptr<DpTables> tables;  // kept when requested
};

struct QueryOptions {
  bool verify = true;
  bool keep_tables = false;
};

// Routing, free intervals, sweep, frontier, reconstruction and verification in
// one call. Throws DataError/ParseError on invalid input or missing route.
InsertionResult insert_train(const Network& net, const Timetable& tt, const ParameterSet& ps,
                             const InsertionRequest& req, const QueryOptions& opt = {});

void check_request(const Network& net, const InsertionRequest& req);

std::string format_tables(const DpTables& tables, const Network& net);

// Free intervals of every element on the covered route, as inspection text.
std::string format_free_intervals(const Network& net, const Timetable& tt,
                                  const ParameterSet& ps, const ArcOrdering& ordering,
                                  FreeInterval window);

}  // namespace pathinsert
