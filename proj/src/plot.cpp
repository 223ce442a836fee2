#include "pathinsert/plot.hpp"

#include <algorithm>
#include <sstream>

namespace pathinsert {

namespace {

struct Layout {
  std::map<std::string, int64_t> pos;  // station -> cumulative distance units
  int64_t span = 1;
};

// Stations in declaration order, spaced by the run-through time of a joining
// segment when one exists.
Layout station_layout(const Network& net, const ParameterSet& ps) {
  Layout l;
  int64_t at = 0;
  for (size_t i = 0; i < net.stations.size(); ++i) {
    if (i > 0) {
      int64_t gap = 600;
      for (const Segment& g : net.segments) {
        if (g.from == net.stations[i - 1].id && g.to == net.stations[i].id) {
          auto d = ps.run_time(g.id, {StoppingPattern::run_through, StoppingPattern::run_through});
          if (d) gap = d->sec;
          break;
        }
      }
      at += gap;
    }
    l.pos[net.stations[i].id] = at;
  }
  l.span = std::max<int64_t>(at, 1);
  return l;
}

}  // namespace

std::string render_diagram(const Network& net, const Timetable& tt, const ParameterSet& ps,
                           const std::vector<TrainPath>& paths, const PlotOptions& opt) {
  Layout layout = station_layout(net, ps);
  int64_t t_min = INT64_MAX, t_max = INT64_MIN;
  auto see = [&](TimePoint t) {
    t_min = std::min(t_min, t.sec);
    t_max = std::max(t_max, t.sec);
  };
  for (const Train& tr : tt.trains)
    for (const TrainEvent& ev : tr.events) {
      see(ev.arrival);
      see(ev.departure);
    }
  for (const TrainPath& p : paths)
    for (const PathStationEvent& ev : p.stations) {
      see(ev.arrival);
      see(ev.departure);
    }
  if (t_min > t_max) {
    t_min = 0;
    t_max = 3600;
  }
  if (t_min == t_max) t_max = t_min + 1;

  const int margin = 60;
  const int w = opt.width, h = opt.height;
  auto x_of = [&](int64_t t, int64_t d) {
    int64_t tv = opt.vertical_time ? d : t;
    int64_t lo = opt.vertical_time ? 0 : t_min;
    int64_t span = opt.vertical_time ? layout.span : (t_max - t_min);
    return margin + int((tv - lo) * (w - 2 * margin) / std::max<int64_t>(span, 1));
  };
  auto y_of = [&](int64_t t, int64_t d) {
    int64_t tv = opt.vertical_time ? t : d;
    int64_t lo = opt.vertical_time ? t_min : 0;
    int64_t span = opt.vertical_time ? (t_max - t_min) : layout.span;
    return h - margin - int((tv - lo) * (h - 2 * margin) / std::max<int64_t>(span, 1));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";

  for (const Station& s : net.stations) {
    auto it = layout.pos.find(s.id);
    if (it == layout.pos.end()) continue;
    bool meet = s.tracks.size() >= 2;
    int x1 = x_of(t_min, it->second), y1 = y_of(t_min, it->second);
    int x2 = x_of(t_max, it->second), y2 = y_of(t_max, it->second);
    svg << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" stroke=\"" << (meet ? "#bbbbbb" : "#e5e5e5") << "\" stroke-width=\""
        << (meet ? 2 : 1) << "\"/>\n";
    svg << "<text x=\"4\" y=\"" << (opt.vertical_time ? y1 - 4 : y1 + 4)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.id << "</text>\n";
  }

  auto polyline = [&](const std::vector<std::pair<int64_t, int64_t>>& pts, const char* color,
                      int width_px) {
    if (pts.size() < 2) return;
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width_px
        << "\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i)
      svg << (i ? " " : "") << x_of(pts[i].first, pts[i].second) << ","
          << y_of(pts[i].first, pts[i].second);
    svg << "\"/>\n";
  };

  for (const Train& tr : tt.trains) {
    std::vector<std::pair<int64_t, int64_t>> pts;
    for (const TrainEvent& ev : tr.events) {
      auto it = layout.pos.find(ev.station);
      if (it == layout.pos.end()) continue;
      pts.emplace_back(ev.arrival.sec, it->second);
      if (ev.departure != ev.arrival) pts.emplace_back(ev.departure.sec, it->second);
    }
    polyline(pts, "#222222", 1);
  }

  for (const TrainPath& p : paths) {
    std::vector<std::pair<int64_t, int64_t>> pts;
    for (const PathStationEvent& ev : p.stations) {
      auto it = layout.pos.find(ev.station);
      if (it == layout.pos.end()) throw DataError("path visits unknown station '" + ev.station + "'");
      pts.emplace_back(ev.arrival.sec, it->second);
      if (ev.departure != ev.arrival) pts.emplace_back(ev.departure.sec, it->second);
    }
    polyline(pts, "#1f6fd0", 2);
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pathinsert
