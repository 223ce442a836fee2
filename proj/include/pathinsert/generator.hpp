#pragma once

#include "pathinsert/model.hpp"

namespace pathinsert {

// Deterministic synthetic corridor: a line of stations with alternating
// single- and double-track stretches, populated with periodic trains in both
// directions. Trains that would violate a margin against an already-placed
// train are skipped, so the produced timetable validates cleanly.
struct GenOptions {
  uint64_t seed = 1;
  int stations = 5;
  int trains = 4;
  TimePoint window_start{0};
  TimePoint window_end{14400};
  int64_t grid = 60;          // every generated time is a multiple of this
  double double_ratio = 0.4;  // share of double-track stretches
};

struct Instance {
  Network network;
  Timetable timetable;
  ParameterSet params;
};

Instance generate(const GenOptions& opt);

struct InstanceTexts {
  std::string network;
  std::string timetable;
  std::string params;
};

// Serialized form of generate(); byte-identical for identical options.
InstanceTexts generate_texts(const GenOptions& opt);

// Station ids along the corridor, west to east.
std::vector<std::string> corridor_stations(const GenOptions& opt);

}  // namespace pathinsert
