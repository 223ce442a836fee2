#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "pathinsert/routing.hpp"

using namespace pathinsert;

namespace {

// Bare graph builder: stations named by single letters, one segment per arc.
Network graph(const std::vector<std::string>& stations,
              const std::vector<std::pair<std::string, std::string>>& arcs) {
  Network net;
  for (const std::string& s : stations) net.stations.push_back({s, s, {"1"}, {}});
  for (const auto& [a, b] : arcs)
    net.segments.push_back({a + ">" + b, a, b, {"1"}, 1, a + ">" + b});
  net.finalize();
  return net;
}

std::map<int, int64_t> unit_weights(const Network& net, int64_t w = 100) {
  std::map<int, int64_t> out;
  for (size_t i = 0; i < net.segments.size(); ++i) out[int(i)] = w;
  return out;
}

std::vector<std::string> exhaustive(const Network& net, const std::map<int, int64_t>& weights,
                                    const std::string& u, const std::string& v, size_t k) {
  // all simple paths by DFS, sorted by (weight, station sequence)
  struct Cand {
    int64_t w;
    std::vector<std::string> stations;
  };
  std::vector<Cand> all;
  std::vector<std::string> stack{u};
  std::function<void(int64_t)> dfs = [&](int64_t w) {
    if (stack.back() == v) {
      all.push_back({w, stack});
      return;
    }
    for (const auto& [arc, aw] : weights) {
      const Segment& g = net.segments[size_t(arc)];
      if (g.from != stack.back()) continue;
      if (std::find(stack.begin(), stack.end(), g.to) != stack.end()) continue;
      stack.push_back(g.to);
      dfs(w + aw);
      stack.pop_back();
    }
  };
  dfs(0);
  std::sort(all.begin(), all.end(), [](const Cand& a, const Cand& b) {
    return std::tie(a.w, a.stations) < std::tie(b.w, b.stations);
  });
  std::vector<std::string> out;
  for (size_t i = 0; i < std::min(k, all.size()); ++i) {
    std::string s;
    for (const auto& st : all[i].stations) s += st;
    out.push_back(s);
  }
  return out;
}

std::string flat(const RoutePath& p) {
  std::string s;
  for (const auto& st : p.stations) s += st;
  return s;
}

}  // namespace

TEST_CASE("a plain corridor yields its single path") {
  Network net = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto paths = k_shortest_paths(net, "a", "c", 3, unit_weights(net));
  REQUIRE(paths.size() == 1);
  CHECK(flat(paths[0]) == "abc");
}

TEST_CASE("a diamond orders its branches by weight") {
  Network net = graph({"u", "a", "b", "v"}, {{"u", "a"}, {"a", "v"}, {"u", "b"}, {"b", "v"}});
  std::map<int, int64_t> w = unit_weights(net, 300);
  w[net.segment_index.at("b>v")] = 400;
  auto paths = k_shortest_paths(net, "u", "v", 5, w);
  REQUIRE(paths.size() == 2);
  CHECK(flat(paths[0]) == "uav");
  CHECK(paths[0].weight == 600);
  CHECK(flat(paths[1]) == "ubv");
  CHECK(paths[1].weight == 700);
}

TEST_CASE("disconnected endpoints give an empty path list") {
  Network net = graph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  CHECK(k_shortest_paths(net, "a", "d", 3, unit_weights(net)).empty());
}

TEST_CASE("k shortest paths match exhaustive enumeration on random graphs") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 4 + int(rng() % 6);
    std::vector<std::string> stations;
    for (int i = 0; i < n; ++i) stations.push_back(std::string(1, char('a' + i)));
    std::vector<std::pair<std::string, std::string>> arcs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rng() % 100 < 35)
          arcs.emplace_back(stations[size_t(i)], stations[size_t(j)]);
    if (arcs.empty()) continue;
    Network net = graph(stations, arcs);
    std::map<int, int64_t> w;
    for (size_t i = 0; i < net.segments.size(); ++i) w[int(i)] = 60 * (1 + int64_t(rng() % 9));
    auto got = k_shortest_paths(net, "a", stations.back(), 6, w);
    auto want = exhaustive(net, w, "a", stations.back(), 6);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
      INFO("iter ", iter, " rank ", i);
      CHECK(flat(got[i]) == want[i]);
    }
  }
}

TEST_CASE("a single path induces its own arc ordering") {
  Network net = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto paths = k_shortest_paths(net, "a", "c", 1, unit_weights(net));
  ArcOrdering ord = build_ordering(paths, net);
  CHECK(ord.report.empty());
  REQUIRE(ord.order.size() == 2);
  CHECK(net.segments[size_t(ord.order[0])].id == "a>b");
  CHECK(net.segments[size_t(ord.order[1])].id == "b>c");
}

TEST_CASE("layered graphs with forward arcs accept every forward path") {
  std::vector<std::string> st{"u", "v"};
  std::vector<std::pair<std::string, std::string>> arcs;
  auto name = [](int layer, int row) { return "L" + std::to_string(layer) + std::to_string(row); };
  for (int l = 1; l <= 3; ++l)
    for (int r = 0; r < 3; ++r) st.push_back(name(l, r));
  for (int r = 0; r < 3; ++r) {
    arcs.push_back({"u", name(1, r)});
    arcs.push_back({name(3, r), "v"});
  }
  for (int l = 1; l <= 3; ++l)
    for (int r = 0; r < 3; ++r)
      for (int q = 0; q < 3; ++q) {
        if (std::abs(r - q) == 1) arcs.push_back({name(l, r), name(l, q)});
        if (l < 3 && r == q) arcs.push_back({name(l, r), name(l + 1, r)});
      }
  Network net = graph(st, arcs);

  // forward paths: enter a layer, run monotonically up or down within it,
  // then step to the next layer
  std::vector<RoutePath> paths;
  std::function<void(int, int, RoutePath)> walk = [&](int layer, int row, RoutePath p) {
    auto push_arc = [&](const std::string& a, const std::string& b, RoutePath& q) {
      q.arcs.push_back(net.segment_index.at(a + ">" + b));
      q.stations.push_back(b);
    };
    if (layer == 3) {
      RoutePath q = p;
      push_arc(name(3, row), "v", q);
      paths.push_back(q);
      return;
    }
    RoutePath q = p;
    push_arc(name(layer, row), name(layer + 1, row), q);
    walk(layer + 1, row, q);
    for (int dir : {1, -1}) {
      RoutePath r = p;
      int at = row;
      while (true) {
        int nx = at + dir;
        if (nx < 0 || nx > 2) break;
        push_arc(name(layer, at), name(layer, nx), r);
        at = nx;
        RoutePath q2 = r;
        push_arc(name(layer, at), name(layer + 1, at), q2);
        walk(layer + 1, at, q2);
      }
    }
  };
  for (int r = 0; r < 3; ++r) {
    RoutePath p;
    p.stations = {"u", name(1, r)};
    p.arcs = {net.segment_index.at("u>" + name(1, r))};
    walk(1, r, p);
  }
  REQUIRE(paths.size() > 20);
  ArcOrdering ord = build_ordering(paths, net);
  CHECK(ord.report.empty());
  CHECK(ord.covered.size() == paths.size());
}

TEST_CASE("the mirrored detour pair is rejected with the contradicting arcs") {
  // spine u - m1 - m2 - v with an upper detour (t1, t2) and a lower one (b1, b2)
  std::vector<std::string> st{"u", "m1", "m2", "v", "t1", "t2", "b1", "b2"};
  std::vector<std::pair<std::string, std::string>> arcs{
      {"u", "b1"},  {"b1", "b2"}, {"b2", "m2"}, {"m2", "m1"}, {"m1", "t1"},
      {"t1", "t2"}, {"t2", "v"},  {"u", "t1"},  {"t2", "m2"}, {"m1", "b1"},
      {"b2", "v"},
  };
  Network net = graph(st, arcs);
  auto arc = [&](const std::string& a, const std::string& b) {
    return net.segment_index.at(a + ">" + b);
  };
  RoutePath displayed{{"u", "b1", "b2", "m2", "m1", "t1", "t2", "v"},
                      {arc("u", "b1"), arc("b1", "b2"), arc("b2", "m2"), arc("m2", "m1"),
                       arc("m1", "t1"), arc("t1", "t2"), arc("t2", "v")},
                      700};
  RoutePath mirrored{{"u", "t1", "t2", "m2", "m1", "b1", "b2", "v"},
                     {arc("u", "t1"), arc("t1", "t2"), arc("t2", "m2"), arc("m2", "m1"),
                      arc("m1", "b1"), arc("b1", "b2"), arc("b2", "v")},
                     700};
  ArcOrdering ord = build_ordering({displayed, mirrored}, net);
  CHECK(ord.covered.size() == 1);
  REQUIRE(ord.report.size() == 1);
  // the displayed path needs the lower detour before the upper one; the
  // mirrored path needs the opposite
  CHECK(ord.report[0].find("t1>t2") != std::string::npos);
  CHECK(ord.report[0].find("b1>b2") != std::string::npos);
  CHECK(ord.order.size() == 7);
}

TEST_CASE("pruning keeps corridors intact and drops unused branches") {
  Network corridor = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "b"}, {"b", "a"}});
  auto paths = k_shortest_paths(corridor, "a", "c", 1, unit_weights(corridor));
  Network pruned = prune(corridor, build_ordering(paths, corridor));
  CHECK(pruned.segments.size() == 2);
  CHECK(pruned.stations.size() == 3);

  Network diamond =
      graph({"u", "a", "b", "v"}, {{"u", "a"}, {"a", "v"}, {"u", "b"}, {"b", "v"}});
  std::map<int, int64_t> w = unit_weights(diamond, 300);
  w[diamond.segment_index.at("b>v")] = 400;
  auto one = k_shortest_paths(diamond, "u", "v", 1, w);
  Network pruned1 = prune(diamond, build_ordering(one, diamond));
  CHECK(pruned1.segments.size() == 2);
  CHECK(pruned1.station_index.count("b") == 0);
}
