#pragma once

#include <map>
#include <mutex>

#include "pathinsert/intervals.hpp"
#include "pathinsert/model.hpp"

namespace pathinsert {

// Maximal instants between T_min and T_max where the inserted train can use a
// station track without breaking any station margin against existing trains.
FreeIntervalList station_free(const Network& net, const Timetable& tt, const ParameterSet& ps,
                              const std::string& station, const std::string& track,
                              FreeInterval window);

// Instants at which the inserted train may cross the transition, against every
// existing movement over the transition itself or a declared conflict partner.
FreeIntervalList transition_free(const Network& net, const Timetable& tt, const ParameterSet& ps,
                                 int transition, FreeInterval window);

// Entry/exit interval pairs per gap between occupations of the physical track,
// both directions merged via the segment resource. Pairs with an empty member
// are dropped; on single-block segments both members coincide.
FreeIntervalPairList segment_free(const Network& net, const Timetable& tt, const ParameterSet& ps,
                                  const std::string& segment, const std::string& track,
                                  FreeInterval window);

// Lazy per-element computation, memoized for the lifetime of one query window.
// Distinct keys may be inserted from concurrent readers.
class FreeIntervalCache {
 public:
  FreeIntervalCache(const Network& net, const Timetable& tt, const ParameterSet& ps,
                    FreeInterval window)
      : net_(net), tt_(tt), ps_(ps), window_(window) {}

  const FreeIntervalList& station(const std::string& s, const std::string& track) const;
  const FreeIntervalList& transition(int t) const;
  const FreeIntervalPairList& segment(const std::string& seg, const std::string& track) const;
  FreeInterval window() const { return window_; }

  // Interval count per element computed so far, for reports.
  size_t station_interval_count(const std::string& s, const std::string& track) const;

 private:
  const Network& net_;
  const Timetable& tt_;
  const ParameterSet& ps_;
  FreeInterval window_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::string, std::string>, FreeIntervalList> stations_;
  mutable std::map<int, FreeIntervalList> transitions_;
  mutable std::map<std::pair<std::string, std::string>, FreeIntervalPairList> segments_;
};

}  // namespace pathinsert
