#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathinsert/generator.hpp"
#include "pathinsert/oracle.hpp"
#include "pathinsert/query.hpp"

using namespace pathinsert;

namespace {

// Frontier scan against hand-built destination tables.
DpTables tables_with(const std::string& dest, std::vector<MappedInterval> items) {
  DpTables t;
  t.station_tables[{dest, "1", StoppingPattern::stop}] = MappedIntervalList{std::move(items)};
  return t;
}

Network dest_only_net() {
  return load_network(R"(
station V tracks=1
station U tracks=1
segment U-V U V tracks=1 blocks=1
transition U 1 U-V 1 departing
transition V 1 U-V 1 arriving
)");
}

}  // namespace

TEST_CASE("a flat piece gives one point at its earliest arrival") {
  DpTables t = tables_with("V", {{500, 600, 100, 0, -1}});
  auto f = frontier(t, dest_only_net(), "V");
  REQUIRE(f.size() == 1);
  CHECK(f[0] == FrontierPoint{100, 500, 0});
}

TEST_CASE("a sliding piece gives one family with its full slack") {
  DpTables t = tables_with("V", {{500, 540, 100, 1, -1}});
  auto f = frontier(t, dest_only_net(), "V");
  REQUIRE(f.size() == 1);
  CHECK(f[0] == FrontierPoint{100, 500, 40});
}

TEST_CASE("a shadowed later piece is dropped") {
  DpTables t = tables_with("V", {{500, 540, 100, 1, -1}, {600, 650, 90, 0, -1}});
  auto f = frontier(t, dest_only_net(), "V");
  REQUIRE(f.size() == 1);
  CHECK(f[0] == FrontierPoint{100, 500, 40});
}

TEST_CASE("a partially shadowed family keeps only its improving tail") {
  DpTables t = tables_with("V", {{500, 500, 130, 0, -1}, {520, 600, 100, 1, -1}});
  auto f = frontier(t, dest_only_net(), "V");
  REQUIRE(f.size() == 2);
  CHECK(f[0] == FrontierPoint{130, 500, 0});
  // the family improves beyond departure 130 only from presence 551 on
  CHECK(f[1] == FrontierPoint{131, 551, 49});
}

TEST_CASE("one-segment reconstruction departs at the window start") {
  Network net = dest_only_net();
  Timetable tt = load_timetable("", net);
  ParameterSet ps = load_parameters("run U-V 300 300 300 360\n", net);
  InsertionRequest req;
  req.origin = "U";
  req.destination = "V";
  req.window_start = TimePoint{1000};
  req.window_end = TimePoint{4600};
  InsertionResult res = insert_train(net, tt, ps, req);
  REQUIRE(res.frontier.size() == 1);
  CHECK(res.frontier[0].departure == 1000);
  CHECK(res.frontier[0].arrival == 1360);  // both ends stop: the SS time
  REQUIRE(res.paths.size() == 1);
  const TrainPath& p = res.paths[0];
  REQUIRE(p.stations.size() == 2);
  CHECK(p.stations[0].station == "U");
  CHECK(p.stations[0].arrival.sec == 1000);
  CHECK(p.stations[0].departure.sec == 1000);
  CHECK(p.stations[1].station == "V");
  CHECK(p.stations[1].arrival.sec == 1360);
  CHECK(p.segments[0].enter.sec == 1000);
  CHECK(p.segments[0].exit.sec == 1360);
  CHECK(p.summary == res.frontier[0]);
}

TEST_CASE("reconstruction is deterministic and waits at the earliest slot") {
  Network net = load_network(R"(
station A tracks=1
station M tracks=1,2
station B tracks=1
segment A-M A M tracks=1 blocks=1
segment M-B M B tracks=1 blocks=1
segment M-A M A tracks=1 blocks=1
segment B-M B M tracks=1 blocks=1
transition A 1 A-M 1 departing
transition M 1 A-M 1 arriving
transition M 2 A-M 1 arriving
transition M 1 M-B 1 departing
transition M 2 M-B 1 departing
transition B 1 M-B 1 arriving
transition M 1 M-A 1 departing
transition A 1 M-A 1 arriving
transition B 1 B-M 1 departing
transition M 1 B-M 1 arriving
)");
  // opposing train blocks M-B until 2000; inserted train waits at M
  Timetable tt = load_timetable(R"(
train T1
stop B 800 900 1 seg=B-M:1
stop M 1700 2000 1 seg=M-A:1
stop A 2900 3000 1
)", net);
  ParameterSet ps = load_parameters(R"(
run A-M 300 300 300 300
run M-B 300 300 300 300
run M-A 300 300 300 300
run B-M 300 300 300 300
)", net);
  InsertionRequest req;
  req.origin = "A";
  req.destination = "B";
  req.window_start = TimePoint{0};
  req.window_end = TimePoint{9000};
  InsertionResult res = insert_train(net, tt, ps, req);
  REQUIRE(!res.frontier.empty());
  for (const auto& v : res.violations) CHECK(v.empty());
  InsertionResult res2 = insert_train(net, tt, ps, req);
  REQUIRE(res.paths.size() == res2.paths.size());
  for (size_t i = 0; i < res.paths.size(); ++i) {
    CHECK(res.paths[i].summary == res2.paths[i].summary);
    REQUIRE(res.paths[i].stations.size() == res2.paths[i].stations.size());
    for (size_t e = 0; e < res.paths[i].stations.size(); ++e) {
      CHECK(res.paths[i].stations[e].arrival == res2.paths[i].stations[e].arrival);
      CHECK(res.paths[i].stations[e].departure == res2.paths[i].stations[e].departure);
      CHECK(res.paths[i].stations[e].track == res2.paths[i].stations[e].track);
    }
  }
  // the earliest-departure path that must dodge T1 waits at M from its
  // earliest feasible arrival, on the free track 2
  bool waited = false;
  for (const TrainPath& p : res.paths)
    for (const PathStationEvent& ev : p.stations)
      if (ev.station == "M" && ev.departure.sec > ev.arrival.sec) {
        waited = true;
        // arriving any earlier would violate a margin; check the slot is tight
        ConflictChecker check(net, tt, ps);
        CHECK(check.station_range(ev.station, ev.track, ev.arrival.sec, ev.departure.sec));
      }
  CHECK(waited);
}

TEST_CASE("verify_path flags margin and running-time violations precisely") {
  Network net = dest_only_net();
  Timetable tt = load_timetable(R"(
train T1
stop U 900 1000 1 seg=U-V:1
stop V 1600 1700 1
)", net);
  ParameterSet ps = load_parameters("run U-V 300 300 300 360\n", net);

  TrainPath p;
  p.summary = {2000, 2360, 0};
  p.stations = {{"U", TimePoint{2000}, TimePoint{2000}, "1", StoppingPattern::stop},
                {"V", TimePoint{2360}, TimePoint{2360}, "1", StoppingPattern::stop}};
  p.segments = {{"U-V", "1", TimePoint{2000}, TimePoint{2360}}};
  CHECK(verify_path(p, net, tt, ps).empty());

  SUBCASE("headway short by one second") {
    // T1 leaves the segment at 1600; entering at 1779 is one second early
    TrainPath q = p;
    q.summary = {1779, 2139, 0};
    q.stations[0].arrival = q.stations[0].departure = TimePoint{1779};
    q.stations[1].arrival = q.stations[1].departure = TimePoint{2139};
    q.segments[0] = {"U-V", "1", TimePoint{1779}, TimePoint{2139}};
    auto v = verify_path(q, net, tt, ps);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("headway") != std::string::npos);
    CHECK(v[0].find("U-V") != std::string::npos);
    // one second later is clean
    q.stations[0].arrival = q.stations[0].departure = TimePoint{1780};
    q.stations[1].arrival = q.stations[1].departure = TimePoint{2140};
    q.segments[0] = {"U-V", "1", TimePoint{1780}, TimePoint{2140}};
    CHECK(verify_path(q, net, tt, ps).empty());
  }

  SUBCASE("running time below the minimum") {
    TrainPath q = p;
    q.stations[1].arrival = q.stations[1].departure = TimePoint{2359};
    q.segments[0].exit = TimePoint{2359};
    auto v = verify_path(q, net, tt, ps);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("running time") != std::string::npos);
    CHECK(v[0].find("SS") != std::string::npos);
  }

  SUBCASE("run-through with a dwell is structurally wrong") {
    TrainPath q = p;
    q.stations[0].pattern = StoppingPattern::run_through;
    q.stations[0].departure = TimePoint{2060};
    q.segments[0].enter = TimePoint{2060};
    q.stations[1].arrival = q.stations[1].departure = TimePoint{2420};
    q.segments[0].exit = TimePoint{2420};
    auto v = verify_path(q, net, tt, ps);
    bool flagged = false;
    for (const auto& msg : v)
      if (msg.find("must not dwell") != std::string::npos) flagged = true;
    CHECK(flagged);
  }
}

TEST_CASE("path records round-trip through the text format") {
  Network net = dest_only_net();
  Timetable tt = load_timetable("", net);
  ParameterSet ps = load_parameters("run U-V 300 300 300 360\n", net);
  InsertionRequest req;
  req.origin = "U";
  req.destination = "V";
  req.window_start = TimePoint{0};
  req.window_end = TimePoint{3600};
  InsertionResult res = insert_train(net, tt, ps, req);
  for (bool iso : {false, true}) {
    std::string text = format_path_records(res.paths, iso);
    std::vector<TrainPath> back = parse_path_records(text);
    REQUIRE(back.size() == res.paths.size());
    for (size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].summary == res.paths[i].summary);
      REQUIRE(back[i].stations.size() == res.paths[i].stations.size());
      for (size_t e = 0; e < back[i].stations.size(); ++e) {
        CHECK(back[i].stations[e].station == res.paths[i].stations[e].station);
        CHECK(back[i].stations[e].arrival == res.paths[i].stations[e].arrival);
        CHECK(back[i].stations[e].pattern == res.paths[i].stations[e].pattern);
      }
      REQUIRE(back[i].segments.size() == res.paths[i].segments.size());
      for (size_t e = 0; e < back[i].segments.size(); ++e) {
        CHECK(back[i].segments[e].segment == res.paths[i].segments[e].segment);
        CHECK(back[i].segments[e].enter == res.paths[i].segments[e].enter);
        CHECK(back[i].segments[e].exit == res.paths[i].segments[e].exit);
      }
    }
  }
}

TEST_CASE("fuzz: reconstructed paths always verify clean") {
  for (uint64_t seed = 100; seed < 140; ++seed) {
    GenOptions opt;
    opt.seed = seed;
    opt.stations = 3 + int(seed % 4);
    opt.trains = int(seed % 7);
    opt.grid = (seed % 2) ? 60 : 1;
    opt.window_end = TimePoint{3600 * (1 + int64_t(seed % 2))};
    Instance inst = generate(opt);
    InsertionRequest req;
    req.origin = corridor_stations(opt).front();
    req.destination = corridor_stations(opt).back();
    req.window_start = opt.window_start;
    req.window_end = opt.window_end;
    InsertionResult res = insert_train(inst.network, inst.timetable, inst.params, req);
    for (size_t i = 0; i < res.violations.size(); ++i) {
      INFO("seed ", seed, " path ", i);
      CHECK(res.violations[i].empty());
    }
  }
}
