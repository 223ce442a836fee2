#pragma once

#include "pathinsert/checks.hpp"
#include "pathinsert/paths.hpp"
#include "pathinsert/routing.hpp"

namespace pathinsert {

// Exact non-dominated (departure, arrival) set on a time grid of step g,
// found by exhaustive forward relaxation over a discretized state graph. This
// is the verification baseline: it evaluates the margin rules per instant via
// ConflictChecker and shares nothing with the interval engine.
//
// Instances must be small (a node cap guards the state count) and, for exact
// equivalence with the continuous engine, grid-aligned.
std::vector<FrontierPoint> oracle_frontier(const Network& net, const Timetable& tt,
                                           const ParameterSet& ps, const InsertionRequest& req,
                                           const ArcOrdering& ordering, Duration g,
                                           size_t node_cap = 4'000'000);

// Convenience overload running the same routing the engine uses.
std::vector<FrontierPoint> oracle_frontier(const Network& net, const Timetable& tt,
                                           const ParameterSet& ps, const InsertionRequest& req,
                                           Duration g, size_t node_cap = 4'000'000);

// True when every time in the instance (window, events, margins, running
// times, station constraints) is a multiple of g.
bool grid_aligned(const Timetable& tt, const ParameterSet& ps, const InsertionRequest& req,
                  Duration g);

// Expands slope-1 families into grid points for set comparison with an oracle
// frontier. Family endpoints must be grid-aligned.
std::vector<FrontierPoint> expand_frontier(const std::vector<FrontierPoint>& f, Duration g);

}  // namespace pathinsert
