#pragma once

#include "pathinsert/intervals.hpp"
#include "pathinsert/model.hpp"

namespace pathinsert {

// Direct evaluation of the margin rules against the loaded timetable, one
// instant or one movement at a time. This is the checking side of the project:
// it shares no code with the interval engine so the two can cross-validate.
class ConflictChecker {
 public:
  ConflictChecker(const Network& net, const Timetable& tt, const ParameterSet& ps)
      : net_(net), tt_(tt), ps_(ps) {}

  // May the inserted train be present on station track (s, j) at instant t?
  bool station_instant(const std::string& s, const std::string& j, int64_t t) const;
  // ... throughout [t1, t2]?
  bool station_range(const std::string& s, const std::string& j, int64_t t1, int64_t t2) const;

  // May the inserted train cross the declared transition at instant t?
  bool transition_instant(int transition, int64_t t) const;

  // May it traverse segment `seg` on track k entering at t1 and leaving at t2?
  bool segment_traversal(const std::string& seg, const std::string& k, int64_t t1,
                         int64_t t2) const;

  // Feasible exit instants for an entry at t1 (unbounded above up to `hi`),
  // before the minimum running time is applied. Empty when lo > hi.
  struct ExitRange {
    int64_t lo = 0, hi = 0;
    bool empty() const { return lo > hi; }
  };
  ExitRange segment_exit_range(const std::string& seg, const std::string& k, int64_t t1,
                               int64_t window_hi) const;

  // Per-instant membership test for one end of a segment, mirroring what the
  // pair lists admit: margin-clean, and the companion end of the same gap
  // between occupations must not be empty (a gap one cannot both enter and
  // leave is unusable).
  bool segment_end_instant(const std::string& seg, const std::string& k, bool exit_end,
                           int64_t t, int64_t window_lo, int64_t window_hi) const;

 private:
  struct EndInstants {
    // Where the occupation blocks each end of the segment, with margins.
    int64_t clear_entry, block_entry, clear_exit, block_exit;
  };
  EndInstants end_instants(const Segment& on, const SegmentOccupation& o) const;

  const Network& net_;
  const Timetable& tt_;
  const ParameterSet& ps_;
};

}  // namespace pathinsert
