#pragma once

// Per-second reference evaluators for the interval algebra, used by the unit
// tests and the acceptance suite. They represent a departure mapping as one
// optional value per integer second and compute each operation by definition.

#include <optional>
#include <random>
#include <vector>

#include "pathinsert/intervals.hpp"

namespace pathinsert::testing {

using DepFn = std::vector<std::optional<int64_t>>;  // index 0 = window.lo

inline DepFn eval(const MappedIntervalList& l, FreeInterval w) {
  DepFn out(size_t(w.hi - w.lo + 1));
  for (const MappedInterval& m : l.items)
    for (int64_t t = std::max(m.lo, w.lo); t <= std::min(m.hi, w.hi); ++t)
      out[size_t(t - w.lo)] = m.dep(t);
  return out;
}

inline DepFn brute_union(const DepFn& a, const DepFn& b) {
  DepFn out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i])
      out[i] = std::max(*a[i], *b[i]);
    else
      out[i] = a[i] ? a[i] : b[i];
  }
  return out;
}

inline DepFn brute_intersect(const DepFn& a, const FreeIntervalList& f, FreeInterval w) {
  DepFn out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && f.contains(w.lo + int64_t(i))) out[i] = a[i];
  return out;
}

// Reachability through one pair: any entry in the pair with exit - entry >= d.
inline DepFn brute_shift(const DepFn& a, int64_t d, const FreeIntervalPairList& pairs,
                         FreeInterval w) {
  DepFn out(a.size());
  for (const FreePair& p : pairs.v) {
    std::optional<int64_t> best;
    int64_t entry = p.entry.lo;
    for (int64_t t = std::max(p.exit.lo, w.lo); t <= std::min(p.exit.hi, w.hi); ++t) {
      for (; entry <= std::min(p.entry.hi, t - d); ++entry) {
        if (entry < w.lo || entry > w.hi) continue;
        auto v = a[size_t(entry - w.lo)];
        if (v && (!best || *v > *best)) best = v;
      }
      if (best) {
        auto& cell = out[size_t(t - w.lo)];
        if (!cell || *best > *cell) cell = best;
      }
    }
  }
  return out;
}

inline DepFn brute_extend(const DepFn& a, const FreeIntervalList& f, int64_t dwell,
                          FreeInterval w) {
  DepFn out(a.size());
  for (const FreeInterval& g : f.v) {
    std::optional<int64_t> best;
    int64_t from = g.lo;
    for (int64_t t = std::max(g.lo, w.lo); t <= std::min(g.hi, w.hi); ++t) {
      for (; from <= std::min(g.hi, t - dwell); ++from) {
        if (from < w.lo || from > w.hi) continue;
        auto v = a[size_t(from - w.lo)];
        if (v && (!best || *v > *best)) best = v;
      }
      if (best) {
        auto& cell = out[size_t(t - w.lo)];
        if (!cell || *best > *cell) cell = best;
      }
    }
  }
  return out;
}

// Random generators for the property campaigns.
struct Rand {
  std::mt19937_64 rng;
  explicit Rand(uint64_t seed) : rng(seed) {}
  int64_t in(int64_t lo, int64_t hi) { return lo + int64_t(rng() % uint64_t(hi - lo + 1)); }

  MappedIntervalList list(FreeInterval w, int max_items = 6) {
    std::vector<MappedInterval> raw;
    int n = int(in(0, max_items));
    for (int i = 0; i < n; ++i) {
      int64_t lo = in(w.lo, w.hi);
      int64_t hi = std::min(w.hi, lo + in(0, (w.hi - w.lo) / 3));
      int8_t slope = int8_t(in(0, 1));
      int64_t dep_lo = lo - in(0, 400);
      raw.push_back({lo, hi, dep_lo, slope, -1});
    }
    return normalize(std::move(raw));
  }

  FreeIntervalList free_list(FreeInterval w, int max_items = 4) {
    FreeIntervalList f;
    int64_t at = w.lo;
    int n = int(in(1, max_items));
    for (int i = 0; i < n && at <= w.hi; ++i) {
      int64_t lo = std::min(w.hi, at + in(0, (w.hi - w.lo) / 4));
      int64_t hi = std::min(w.hi, lo + in(0, (w.hi - w.lo) / 3));
      f.v.push_back({lo, hi});
      at = hi + 2;
    }
    return f;
  }

  FreeIntervalPairList pair_list(FreeInterval w, int max_items = 3) {
    FreeIntervalPairList f;
    int64_t at = w.lo;
    int n = int(in(1, max_items));
    for (int i = 0; i < n && at + 4 <= w.hi; ++i) {
      int64_t e_lo = std::min(w.hi, at + in(0, (w.hi - w.lo) / 4));
      int64_t e_hi = std::min(w.hi, e_lo + in(0, (w.hi - w.lo) / 3));
      int64_t x_lo = std::min(w.hi, e_lo + in(0, (w.hi - w.lo) / 4));
      int64_t x_hi = std::max(x_lo, std::min(w.hi, e_hi + in(0, (w.hi - w.lo) / 3)));
      f.v.push_back({{e_lo, e_hi}, {x_lo, x_hi}});
      at = std::max(e_hi, x_hi) + 2;
    }
    return f;
  }
};

}  // namespace pathinsert::testing
