#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathinsert/generator.hpp"
#include "pathinsert/oracle.hpp"
#include "pathinsert/query.hpp"

using namespace pathinsert;

namespace {

const char* kThreeStationNet = R"(
station A tracks=1
station M tracks=1
station B tracks=1
segment A-M A M tracks=1 blocks=1
segment M-B M B tracks=1 blocks=1
segment M-A M A tracks=1 blocks=1
segment B-M B M tracks=1 blocks=1
transition A 1 A-M 1 departing
transition M 1 A-M 1 arriving
transition M 1 M-B 1 departing
transition B 1 M-B 1 arriving
transition M 1 M-A 1 departing
transition A 1 M-A 1 arriving
transition B 1 B-M 1 departing
transition M 1 B-M 1 arriving
)";

const char* kThreeStationParams = R"(
run A-M 300 300 300 300
run M-B 300 300 300 300
run M-A 300 300 300 300
run B-M 300 300 300 300
)";

InsertionRequest req_ab(int64_t lo, int64_t hi) {
  InsertionRequest req;
  req.origin = "A";
  req.destination = "B";
  req.window_start = TimePoint{lo};
  req.window_end = TimePoint{hi};
  return req;
}

}  // namespace

TEST_CASE("empty corridor: the whole slope-one family, one point per grid step") {
  Network net = load_network(kThreeStationNet);
  Timetable tt = load_timetable("", net);
  ParameterSet ps = load_parameters(kThreeStationParams, net);
  auto points = oracle_frontier(net, tt, ps, req_ab(0, 3600), Duration{60});
  // travel time 600: departures 0 .. 3000
  REQUIRE(points.size() == 51);
  CHECK(points.front() == FrontierPoint{0, 600, 0});
  CHECK(points.back() == FrontierPoint{3000, 3600, 0});
  for (size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].departure == int64_t(i) * 60);
    CHECK(points[i].arrival == points[i].departure + 600);
  }
}

TEST_CASE("single-track meet: the oracle confirms the hand-computed gap") {
  Network net = load_network(R"(
station A tracks=1
station B tracks=1
segment A-B A B tracks=1 blocks=1
segment B-A B A tracks=1 blocks=1
transition A 1 A-B 1 departing
transition B 1 A-B 1 arriving
transition B 1 B-A 1 departing
transition A 1 B-A 1 arriving
)");
  Timetable tt = load_timetable(R"(
train T1
stop B 900 1000 1 seg=B-A:1
stop A 1600 1700 1
)", net);
  ParameterSet ps = load_parameters("run A-B 300 300 300 300\nrun B-A 300 300 300 300\n", net);
  auto points = oracle_frontier(net, tt, ps, req_ab(0, 3600), Duration{20});
  // reachable: departures 0..420 (ahead of the meet) and 1880..3300 (after it)
  REQUIRE(!points.empty());
  std::vector<FrontierPoint> want;
  for (int64_t d = 0; d <= 420; d += 20) want.push_back({d, d + 300, 0});
  for (int64_t d = 1880; d <= 3300; d += 20) want.push_back({d, d + 300, 0});
  CHECK(points == want);
}

TEST_CASE("waiting at an intermediate station is found when it pays off") {
  Network net = load_network(kThreeStationNet);
  // opposing train crosses M-B then M-A; a train reaching M early must wait
  Timetable tt = load_timetable(R"(
train T1
stop B 840 900 1 seg=B-M:1
stop M 1500 1560 1 seg=M-A:1
stop A 2160 2220 1
)", net);
  ParameterSet ps = load_parameters(kThreeStationParams, net);
  auto points = oracle_frontier(net, tt, ps, req_ab(0, 7200), Duration{60});
  REQUIRE(!points.empty());
  InsertionResult res = insert_train(net, tt, ps, req_ab(0, 7200));
  CHECK(expand_frontier(res.frontier, Duration{60}) == points);
  for (const auto& v : res.violations) CHECK(v.empty());
}

TEST_CASE("oracle refuses oversized instances") {
  Network net = load_network(kThreeStationNet);
  Timetable tt = load_timetable("", net);
  ParameterSet ps = load_parameters(kThreeStationParams, net);
  CHECK_THROWS_WITH_AS(oracle_frontier(net, tt, ps, req_ab(0, 8 * 86400), Duration{60}, 10000),
                       doctest::Contains("too large"), DataError);
}

TEST_CASE("grid alignment detection") {
  GenOptions opt;
  opt.seed = 3;
  opt.stations = 3;
  opt.trains = 2;
  opt.grid = 60;
  Instance inst = generate(opt);
  InsertionRequest req;
  req.window_start = TimePoint{0};
  req.window_end = TimePoint{3600};
  CHECK(grid_aligned(inst.timetable, inst.params, req, Duration{60}));
  req.window_end = TimePoint{3601};
  CHECK(!grid_aligned(inst.timetable, inst.params, req, Duration{60}));
  GenOptions fine = opt;
  fine.grid = 1;
  fine.seed = 4;
  Instance inst2 = generate(fine);
  CHECK(grid_aligned(inst2.timetable, inst2.params, req_ab(0, 3600), Duration{1}));
}

TEST_CASE("refining the grid never worsens the frontier") {
  Network net = load_network(R"(
station A tracks=1
station B tracks=1
segment A-B A B tracks=1 blocks=1
segment B-A B A tracks=1 blocks=1
transition A 1 A-B 1 departing
transition B 1 A-B 1 arriving
transition B 1 B-A 1 departing
transition A 1 B-A 1 arriving
)");
  Timetable tt = load_timetable(R"(
train T1
stop B 900 960 1 seg=B-A:1
stop A 1560 1620 1
)", net);
  ParameterSet ps = load_parameters("run A-B 300 300 300 300\nrun B-A 300 300 300 300\n", net);
  auto coarse = oracle_frontier(net, tt, ps, req_ab(0, 3600), Duration{120});
  auto fine = oracle_frontier(net, tt, ps, req_ab(0, 3600), Duration{60});
  for (const FrontierPoint& c : coarse) {
    bool matched = false;
    for (const FrontierPoint& f : fine)
      if (f.departure >= c.departure && f.arrival <= c.arrival) matched = true;
    CHECK(matched);
  }
}
