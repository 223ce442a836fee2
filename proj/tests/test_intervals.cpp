#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brute_force.hpp"
#include "pathinsert/intervals.hpp"

using namespace pathinsert;
using namespace pathinsert::testing;

namespace {

MappedIntervalList make(std::vector<MappedInterval> items) { return {std::move(items)}; }

void check_pointwise(const MappedIntervalList& got, const DepFn& want, FreeInterval w) {
  DepFn have = eval(got, w);
  for (size_t i = 0; i < want.size(); ++i) {
    INFO("t = ", w.lo + int64_t(i));
    CHECK(have[i] == want[i]);
  }
}

}  // namespace

TEST_CASE("union identity and basic overlap") {
  MappedIntervalList a = make({{100, 200, 50, 1, -1}});
  CHECK(unite(a, {}).items == a.items);
  CHECK(unite({}, a).items == a.items);

  // overlapping slope-1 and slope-0 pieces: the running piece stays on top
  MappedIntervalList b = make({{150, 250, 80, 0, -1}});
  MappedIntervalList u = unite(a, b);
  REQUIRE(u.items.size() == 2);
  CHECK(u.items[0].lo == 100);
  CHECK(u.items[0].hi == 200);
  CHECK(u.items[0].dep_lo == 50);
  CHECK(u.items[0].slope == 1);
  CHECK(u.items[1].lo == 201);
  CHECK(u.items[1].hi == 250);
  CHECK(u.items[1].dep_lo == 80);
  CHECK(u.items[1].slope == 0);
}

TEST_CASE("union crossover splits at the exact instant") {
  // constant 40 against t - 90: equal at t = 130, constant listed first
  MappedIntervalList a = make({{100, 200, 40, 0, -1}});
  MappedIntervalList b = make({{100, 200, 10, 1, -1}});
  MappedIntervalList u = unite(a, b);
  REQUIRE(u.items.size() == 2);
  CHECK(u.items[0].lo == 100);
  CHECK(u.items[0].hi == 130);
  CHECK(u.items[0].slope == 0);
  CHECK(u.items[0].dep_lo == 40);
  CHECK(u.items[1].lo == 131);
  CHECK(u.items[1].hi == 200);
  CHECK(u.items[1].slope == 1);
  CHECK(u.items[1].dep_lo == 41);
  check_canonical(u);
}

TEST_CASE("union keeps identical overlapping mappings as one item") {
  MappedIntervalList a = make({{100, 150, 20, 1, -1}});
  MappedIntervalList b = make({{120, 180, 40, 1, -1}});  // same line dep = t - 80
  MappedIntervalList u = unite(a, b);
  REQUIRE(u.items.size() == 1);
  CHECK(u.items[0].lo == 100);
  CHECK(u.items[0].hi == 180);
  CHECK(u.items[0].dep_lo == 20);
}

TEST_CASE("intersect restriction") {
  MappedIntervalList a = make({{100, 300, 100, 1, -1}});
  SUBCASE("identity") {
    CHECK(intersect(a, FreeIntervalList{{{0, 1000}}}).items == a.items);
  }
  SUBCASE("affine restriction") {
    MappedIntervalList r = intersect(a, FreeIntervalList{{{150, 200}}});
    REQUIRE(r.items.size() == 1);
    CHECK(r.items[0].lo == 150);
    CHECK(r.items[0].hi == 200);
    CHECK(r.items[0].dep_lo == 150);
    CHECK(r.items[0].slope == 1);
  }
  SUBCASE("empty annihilates") { CHECK(intersect(a, {}).empty()); }
}

TEST_CASE("shift translates and adds the slow continuation") {
  MappedIntervalList a = make({{1000, 1100, 1000, 1, -1}});
  FreeIntervalPairList pairs{{{{900, 1200}, {1200, 2000}}}};
  MappedIntervalList s = shift(a, Duration{300}, pairs, nullptr);
  REQUIRE(s.items.size() == 2);
  CHECK(s.items[0].lo == 1300);
  CHECK(s.items[0].hi == 1400);
  CHECK(s.items[0].dep_lo == 1000);
  CHECK(s.items[0].slope == 1);
  CHECK(s.items[1].lo == 1401);
  CHECK(s.items[1].hi == 2000);
  CHECK(s.items[1].dep_lo == 1100);
  CHECK(s.items[1].slope == 0);
}

TEST_CASE("shift truncates to the exit interval") {
  MappedIntervalList a = make({{1000, 1100, 1000, 1, -1}});
  FreeIntervalPairList pairs{{{{900, 1200}, {1200, 1350}}}};
  MappedIntervalList s = shift(a, Duration{300}, pairs, nullptr);
  REQUIRE(s.items.size() == 1);
  CHECK(s.items[0].lo == 1300);
  CHECK(s.items[0].hi == 1350);
  CHECK(s.items[0].slope == 1);
}

TEST_CASE("shift with zero distance and a covering pair is the identity") {
  MappedIntervalList a = make({{100, 200, 50, 1, -1}, {300, 320, 180, 0, -1}});
  FreeIntervalPairList pairs{{{{0, 1000}, {0, 1000}}}};
  MappedIntervalList s = shift(a, Duration{0}, pairs, nullptr);
  FreeInterval w{0, 1000};
  // waiting on the segment is allowed by the pair, so the result is the
  // extension-like closure; pointwise it must match the brute force
  check_pointwise(s, brute_shift(eval(a, w), 0, pairs, w), w);
}

TEST_CASE("extend adds waiting tails") {
  MappedIntervalList a = make({{100, 200, 50, 1, -1}});
  FreeIntervalList f{{{0, 500}}};
  MappedIntervalList e = extend(a, f, Duration{0}, nullptr);
  REQUIRE(e.items.size() == 2);
  CHECK(e.items[0].lo == 100);
  CHECK(e.items[0].hi == 200);
  CHECK(e.items[0].slope == 1);
  CHECK(e.items[1].lo == 201);
  CHECK(e.items[1].hi == 500);
  CHECK(e.items[1].dep_lo == 150);
  CHECK(e.items[1].slope == 0);
}

TEST_CASE("extend leaves an item ending at the free boundary alone") {
  MappedIntervalList a = make({{100, 500, 50, 1, -1}});
  FreeIntervalList f{{{0, 500}}};
  MappedIntervalList e = extend(a, f, Duration{0}, nullptr);
  REQUIRE(e.items.size() == 1);
  CHECK(e.items[0].lo == 100);
  CHECK(e.items[0].hi == 500);
}

TEST_CASE("extend with a minimum dwell delays the usable instants") {
  MappedIntervalList a = make({{100, 200, 50, 1, -1}});
  FreeIntervalList f{{{0, 500}}};
  MappedIntervalList e = extend(a, f, Duration{120}, nullptr);
  FreeInterval w{0, 500};
  check_pointwise(e, brute_extend(eval(a, w), f, 120, w), w);
  CHECK(e.items.front().lo == 220);
}

TEST_CASE("normalize merges continuing pieces and is idempotent") {
  MappedIntervalList n = normalize({{100, 150, 50, 1, -1}, {151, 200, 101, 1, -1}});
  REQUIRE(n.items.size() == 1);
  CHECK(n.items[0].lo == 100);
  CHECK(n.items[0].hi == 200);

  Rand rand(7);
  FreeInterval w{0, 2000};
  for (int i = 0; i < 200; ++i) {
    std::vector<MappedInterval> raw;
    int parts = int(rand.in(0, 8));
    for (int p = 0; p < parts; ++p) {
      int64_t lo = rand.in(w.lo, w.hi);
      int64_t hi = std::min(w.hi, lo + rand.in(0, 500));
      raw.push_back({lo, hi, lo - rand.in(0, 300), int8_t(rand.in(0, 1)), -1});
    }
    MappedIntervalList once = normalize(raw);
    check_canonical(once);
    MappedIntervalList twice = normalize(once.items);
    CHECK(once.items == twice.items);
    // pointwise maximum preserved
    DepFn want(size_t(w.hi - w.lo + 1));
    for (const MappedInterval& m : raw)
      for (int64_t t = m.lo; t <= m.hi; ++t) {
        auto& cell = want[size_t(t - w.lo)];
        if (!cell || m.dep(t) > *cell) cell = m.dep(t);
      }
    check_pointwise(once, want, w);
  }
}

TEST_CASE("property: algebra equals the per-second evaluators") {
  FreeInterval w{0, 1500};
  Rand rand(20240201);
  for (int i = 0; i < 400; ++i) {
    MappedIntervalList a = rand.list(w);
    MappedIntervalList b = rand.list(w);
    FreeIntervalList f = rand.free_list(w);
    FreeIntervalPairList pairs = rand.pair_list(w);
    int64_t d = rand.in(0, 300);
    int64_t dwell = rand.in(0, 150);

    check_pointwise(unite(a, b), brute_union(eval(a, w), eval(b, w)), w);
    check_pointwise(intersect(a, f), brute_intersect(eval(a, w), f, w), w);
    check_pointwise(shift(a, Duration{d}, pairs, nullptr),
                    brute_shift(eval(a, w), d, pairs, w), w);
    check_pointwise(extend(intersect(a, f), f, Duration{dwell}, nullptr),
                    brute_extend(eval(intersect(a, f), w), f, dwell, w), w);
    check_canonical(unite(a, b));
    check_canonical(shift(a, Duration{d}, pairs, nullptr));
  }
}

TEST_CASE("property: union commutes and intersect distributes, pointwise") {
  FreeInterval w{0, 800};
  Rand rand(99);
  for (int i = 0; i < 150; ++i) {
    MappedIntervalList a = rand.list(w), b = rand.list(w), c = rand.list(w);
    FreeIntervalList f = rand.free_list(w);
    CHECK(eval(unite(a, b), w) == eval(unite(b, a), w));
    CHECK(eval(unite(unite(a, b), c), w) == eval(unite(a, unite(b, c)), w));
    CHECK(eval(intersect(unite(a, b), f), w) ==
          eval(unite(intersect(a, f), intersect(b, f)), w));
  }
}

TEST_CASE("provenance survives restriction and splitting") {
  ProvArena arena;
  ProvNode origin;
  origin.kind = ProvNode::Kind::Origin;
  int32_t p0 = arena.add(origin);
  MappedIntervalList a = make({{100, 300, 100, 1, p0}});
  MappedIntervalList r = intersect(a, FreeIntervalList{{{120, 140}, {200, 260}}});
  REQUIRE(r.items.size() == 2);
  CHECK(r.items[0].prov == p0);
  CHECK(r.items[1].prov == p0);

  FreeIntervalPairList pairs{{{{0, 400}, {0, 800}}}};
  MappedIntervalList s = shift(r, Duration{50}, pairs, &arena);
  for (const MappedInterval& m : s.items) {
    REQUIRE(m.prov >= 0);
    const ProvNode& n = arena.at(m.prov);
    CHECK((n.kind == ProvNode::Kind::Full || n.kind == ProvNode::Kind::Slow));
    CHECK(n.parent == p0);
  }
}
