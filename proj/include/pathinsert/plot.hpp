#pragma once

#include "pathinsert/paths.hpp"

namespace pathinsert {

struct PlotOptions {
  int width = 1000;
  int height = 620;
  bool vertical_time = false;  // default: time left to right, distance upwards
};

// Time-distance diagram as an SVG document: existing trains in black,
// candidate paths in blue, stations where trains can meet or overtake (two or
// more tracks) as grey horizontal lines. Station spacing follows the summed
// minimum running times. Output is byte-deterministic.
std::string render_diagram(const Network& net, const Timetable& tt, const ParameterSet& ps,
                           const std::vector<TrainPath>& paths, const PlotOptions& opt = {});

}  // namespace pathinsert
