#include "pathinsert/generator.hpp"

#include <algorithm>
#include <random>

#include "pathinsert/checks.hpp"

namespace pathinsert {

namespace {

std::string station_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "S%02d", i + 1);
  return buf;
}

int64_t round_up(int64_t v, int64_t grid) { return (v + grid - 1) / grid * grid; }

// Incremental occupation insert so the accept loop stays quadratic-free.
void append_train(Timetable& tt, const Network& net, Train train) {
  tt.trains.push_back(std::move(train));
  const Train& tr = tt.trains.back();
  int ti = int(tt.trains.size()) - 1;
  for (size_t e = 0; e < tr.events.size(); ++e) {
    const TrainEvent& ev = tr.events[e];
    auto& su = tt.station_use[{ev.station, ev.track}];
    su.insert(std::upper_bound(su.begin(), su.end(), ev.arrival,
                               [](TimePoint t, const StationOccupation& o) {
                                 return t < o.arrival;
                               }),
              {ti, ev.arrival, ev.departure});
    if (e + 1 == tr.events.size()) continue;
    const TrainEvent& nx = tr.events[e + 1];
    const Segment& g = net.segment(ev.next_segment);
    auto& gu = tt.segment_use[{g.resource, ev.next_segment_track}];
    gu.insert(std::upper_bound(gu.begin(), gu.end(), ev.departure,
                               [](TimePoint t, const SegmentOccupation& o) {
                                 return t < o.enter;
                               }),
              {ti, net.segment_index.at(g.id), ev.departure, nx.arrival});
    int dep_tr = net.transition_id(
        {ev.station, ev.track, g.id, ev.next_segment_track, TransitionDir::departing});
    if (dep_tr >= 0) {
      auto& tu = tt.transition_use[dep_tr];
      tu.insert(std::upper_bound(tu.begin(), tu.end(), ev.departure,
                                 [](TimePoint t, const TransitionMovement& m) {
                                   return t < m.instant;
                                 }),
                {ti, ev.departure, TransitionDir::departing});
    }
    int arr_tr = net.transition_id(
        {nx.station, nx.track, g.id, ev.next_segment_track, TransitionDir::arriving});
    if (arr_tr >= 0) {
      auto& tu = tt.transition_use[arr_tr];
      tu.insert(std::upper_bound(tu.begin(), tu.end(), nx.arrival,
                                 [](TimePoint t, const TransitionMovement& m) {
                                   return t < m.instant;
                                 }),
                {ti, nx.arrival, TransitionDir::arriving});
    }
  }
}

bool train_fits(const Network& net, const Timetable& kept, const ParameterSet& ps,
                const Train& tr) {
  ConflictChecker check(net, kept, ps);
  for (size_t e = 0; e < tr.events.size(); ++e) {
    const TrainEvent& ev = tr.events[e];
    if (!check.station_range(ev.station, ev.track, ev.arrival.sec, ev.departure.sec))
      return false;
    if (e + 1 == tr.events.size()) continue;
    const TrainEvent& nx = tr.events[e + 1];
    if (!check.segment_traversal(ev.next_segment, ev.next_segment_track, ev.departure.sec,
                                 nx.arrival.sec))
      return false;
    int dep_tr = net.transition_id({ev.station, ev.track, ev.next_segment,
                                    ev.next_segment_track, TransitionDir::departing});
    if (dep_tr >= 0 && !check.transition_instant(dep_tr, ev.departure.sec)) return false;
    int arr_tr = net.transition_id({nx.station, nx.track, ev.next_segment,
                                    ev.next_segment_track, TransitionDir::arriving});
    if (arr_tr >= 0 && !check.transition_instant(arr_tr, nx.arrival.sec)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> corridor_stations(const GenOptions& opt) {
  std::vector<std::string> out;
  for (int i = 0; i < opt.stations; ++i) out.push_back(station_id(i));
  return out;
}

Instance generate(const GenOptions& opt) {
  if (opt.stations < 2) throw DataError("generator needs at least 2 stations");
  if (opt.trains < 0) throw DataError("negative train count");
  if (opt.grid < 1) throw DataError("grid must be at least 1 s");
  if (!(opt.window_start < opt.window_end)) throw DataError("empty generator window");
  std::mt19937_64 rng(opt.seed);
  auto pick = [&](int64_t lo, int64_t hi) {  // inclusive, grid-aligned
    int64_t steps = (hi - lo) / opt.grid;
    return lo + int64_t(rng() % uint64_t(steps + 1)) * opt.grid;
  };

  Instance inst;
  Network& net = inst.network;
  const int n = opt.stations;
  for (int i = 0; i < n; ++i) {
    Station s;
    s.id = station_id(i);
    s.name = "Station " + std::to_string(i + 1);
    s.tracks = {"1", "2"};
    if (rng() % 5 == 0) s.tracks.push_back("3");
    net.stations.push_back(std::move(s));
  }
  std::vector<bool> is_double(size_t(n - 1));
  for (int i = 0; i + 1 < n; ++i)
    is_double[size_t(i)] = (rng() % 1000) < uint64_t(opt.double_ratio * 1000);
  for (int i = 0; i + 1 < n; ++i) {
    const std::string a = station_id(i), b = station_id(i + 1);
    Segment fwd{a + "-" + b, a, b, {}, 1, ""};
    Segment rev{b + "-" + a, b, a, {}, 1, ""};
    if (is_double[size_t(i)]) {
      fwd.tracks = {"n"};
      rev.tracks = {"s"};
      fwd.blocks = rev.blocks = 3;
    } else {
      fwd.tracks = {"1"};
      rev.tracks = {"1"};
    }
    net.segments.push_back(std::move(fwd));
    net.segments.push_back(std::move(rev));
  }
  for (const Segment& g : net.segments) {
    const Station& from = *std::find_if(net.stations.begin(), net.stations.end(),
                                        [&](const Station& s) { return s.id == g.from; });
    const Station& to = *std::find_if(net.stations.begin(), net.stations.end(),
                                      [&](const Station& s) { return s.id == g.to; });
    for (const std::string& k : g.tracks) {
      for (const std::string& j : from.tracks)
        net.transitions.push_back({from.id, j, g.id, k, TransitionDir::departing});
      for (const std::string& j : to.tracks)
        net.transitions.push_back({to.id, j, g.id, k, TransitionDir::arriving});
    }
  }
  net.finalize();
  // Conflicts: same station track, or same physical segment track.
  for (size_t a = 0; a < net.transitions.size(); ++a) {
    for (size_t b = a + 1; b < net.transitions.size(); ++b) {
      const Transition& ta = net.transitions[a];
      const Transition& tb = net.transitions[b];
      bool same_station_track = ta.station == tb.station && ta.station_track == tb.station_track;
      bool same_metal = ta.segment_track == tb.segment_track &&
                        net.segment(ta.segment).resource == net.segment(tb.segment).resource;
      if (same_station_track || same_metal) net.conflicts.emplace_back(int(a), int(b));
    }
  }

  ParameterSet& ps = inst.params;
  ps.headway_default = Duration{round_up(180, opt.grid)};
  ps.station_default = Duration{round_up(180, opt.grid)};
  ps.transition_default = Duration{round_up(180, opt.grid)};
  ps.transition_block = Duration{round_up(60, opt.grid)};
  std::vector<int64_t> base_rr(size_t(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    int64_t base = round_up(240, opt.grid) + pick(0, 3 * opt.grid);
    base_rr[size_t(i)] = base;
    for (const std::string& id : {station_id(i) + "-" + station_id(i + 1),
                                  station_id(i + 1) + "-" + station_id(i)}) {
      ps.run_times[{id, "RR"}] = Duration{base};
      ps.run_times[{id, "SR"}] = Duration{base + round_up(60, opt.grid)};
      ps.run_times[{id, "RS"}] = Duration{base + round_up(60, opt.grid)};
      ps.run_times[{id, "SS"}] = Duration{base + 2 * round_up(60, opt.grid)};
    }
  }

  Timetable& tt = inst.timetable;
  const int64_t W0 = opt.window_start.sec, W1 = opt.window_end.sec;
  int accepted = 0;
  for (int attempt = 0; attempt < opt.trains * 10 && accepted < opt.trains; ++attempt) {
    bool eastbound = attempt % 2 == 0;
    Train tr;
    tr.id = (eastbound ? "E" : "W") + std::to_string(attempt + 1);
    int64_t factor_pct = 100 + 25 * int64_t(rng() % 3);  // 100..150%
    int64_t t = pick(W0, std::max(W0, W1 - opt.grid));
    const std::string station_track = eastbound ? "1" : "2";
    // local services: a contiguous span of the corridor, not always the whole
    int lo_idx = int(rng() % uint64_t(n - 1));
    int span = 1 + int(rng() % uint64_t(n - lo_idx - 1) % 12);
    int hi_idx = lo_idx + span;
    int legs = hi_idx - lo_idx;
    for (int step = 0; step <= legs; ++step) {
      int idx = eastbound ? lo_idx + step : hi_idx - step;
      TrainEvent ev;
      ev.station = station_id(idx);
      ev.track = station_track;
      ev.arrival = TimePoint{t};
      bool stops = step == 0 || step == legs || rng() % 5 < 2;
      int64_t dwell = stops && step > 0 && step < legs ? pick(opt.grid, 3 * opt.grid) : 0;
      t += dwell;
      ev.departure = TimePoint{t};
      if (step < legs) {
        int seg_gap = eastbound ? idx : idx - 1;
        int nxt = eastbound ? idx + 1 : idx - 1;
        ev.next_segment = station_id(idx) + "-" + station_id(nxt);
        ev.next_segment_track = is_double[size_t(seg_gap)] ? (eastbound ? "n" : "s") : "1";
        int64_t travel = round_up(base_rr[size_t(seg_gap)] * factor_pct / 100, opt.grid);
        t += travel;
      }
      tr.events.push_back(std::move(ev));
    }
    if (train_fits(net, tt, ps, tr)) {
      append_train(tt, net, std::move(tr));
      ++accepted;
    }
  }
  // Canonical order and a clean rebuild of the derived maps.
  std::sort(tt.trains.begin(), tt.trains.end(), [](const Train& a, const Train& b) {
    return std::tie(a.events.front().departure, a.id) <
           std::tie(b.events.front().departure, b.id);
  });
  tt.derive(net);
  return inst;
}

InstanceTexts generate_texts(const GenOptions& opt) {
  Instance inst = generate(opt);
  return {serialize_network(inst.network), serialize_timetable(inst.timetable),
          serialize_parameters(inst.params)};
}

}  // namespace pathinsert
