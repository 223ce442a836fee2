#include "pathinsert/intervals.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pathinsert {

bool FreeIntervalList::contains(int64_t t) const {
  auto it = std::upper_bound(v.begin(), v.end(), t,
                             [](int64_t x, const FreeInterval& f) { return x < f.lo; });
  if (it == v.begin()) return false;
  --it;
  return t <= it->hi;
}

FreeIntervalList FreeIntervalPairList::entries() const {
  FreeIntervalList out;
  out.v.reserve(v.size());
  for (const auto& p : v) out.v.push_back(p.entry);
  return out;
}

bool MappedIntervalList::defined(int64_t t) const {
  auto it = std::upper_bound(items.begin(), items.end(), t,
                             [](int64_t x, const MappedInterval& m) { return x < m.lo; });
  if (it == items.begin()) return false;
  --it;
  return t <= it->hi;
}

int64_t MappedIntervalList::dep_at(int64_t t) const {
  auto it = std::upper_bound(items.begin(), items.end(), t,
                             [](int64_t x, const MappedInterval& m) { return x < m.lo; });
  assert(it != items.begin());
  --it;
  assert(t >= it->lo && t <= it->hi);
  return it->dep(t);
}

namespace {

// Greedy left-to-right merge of adjacent pieces whose affine map continues
// exactly. Provenance must match, otherwise backward reconstruction would lose
// the second piece's source.
void merge_adjacent(std::vector<MappedInterval>& v) {
  if (v.empty()) return;
  std::vector<MappedInterval> out;
  out.reserve(v.size());
  out.push_back(v.front());
  for (size_t i = 1; i < v.size(); ++i) {
    MappedInterval& a = out.back();
    const MappedInterval& b = v[i];
    if (b.lo == a.hi + 1 && a.prov == b.prov) {
      int64_t step = b.dep(b.lo) - a.dep(a.hi);
      bool a_single = a.lo == a.hi, b_single = b.lo == b.hi;
      bool slopes_ok = (a_single || b_single) ? true : a.slope == b.slope;
      int8_t merged_slope = a_single ? (b_single ? int8_t(step) : b.slope) : a.slope;
      if (slopes_ok && (step == 0 || step == 1) && step == merged_slope &&
          b.dep(b.hi) - a.dep(a.lo) == merged_slope * (b.hi - a.lo)) {
        a.hi = b.hi;
        a.slope = merged_slope;
        continue;
      }
    }
    out.push_back(b);
  }
  v = std::move(out);
}

}  // namespace

MappedIntervalList normalize(std::vector<MappedInterval> raw) {
  std::erase_if(raw, [](const MappedInterval& m) { return m.lo > m.hi; });
  if (raw.empty()) return {};

  // Boundary sweep: between consecutive boundaries the set of covering items is
  // constant, so the pointwise max is the upper envelope of at most one best
  // constant and one best unit-slope line.
  std::vector<int64_t> bounds;
  bounds.reserve(raw.size() * 2);
  for (const auto& m : raw) {
    bounds.push_back(m.lo);
    bounds.push_back(m.hi + 1);
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  // Items sorted by lo, walked with a sliding window over the sweep.
  std::vector<size_t> order(raw.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return raw[x].lo < raw[y].lo; });

  std::vector<MappedInterval> pieces;
  std::vector<size_t> active;
  size_t next = 0;
  for (size_t bi = 0; bi + 1 < bounds.size(); ++bi) {
    int64_t p = bounds[bi], q = bounds[bi + 1] - 1;
    while (next < order.size() && raw[order[next]].lo <= p) active.push_back(order[next++]);
    std::erase_if(active, [&](size_t i) { return raw[i].hi < p; });
    if (active.empty()) continue;

    bool has_const = false, has_line = false;
    int64_t best_c = 0, best_line_c = 0;
    size_t ci = 0, li = 0;
    for (size_t i : active) {
      const MappedInterval& m = raw[i];
      if (m.slope == 0) {
        if (!has_const || m.dep_lo > best_c || (m.dep_lo == best_c && i < ci)) {
          has_const = true;
          best_c = m.dep_lo;
          ci = i;
        }
      } else {
        int64_t c = m.dep_lo - m.lo;  // dep(t) = t + c
        if (!has_line || c > best_line_c || (c == best_line_c && i < li)) {
          has_line = true;
          best_line_c = c;
          li = i;
        }
      }
    }

    auto emit = [&](int64_t lo, int64_t hi, bool line) {
      if (lo > hi) return;
      const MappedInterval& src = raw[line ? li : ci];
      pieces.push_back({lo, hi, line ? lo + best_line_c : best_c, int8_t(line ? 1 : 0), src.prov});
    };

    if (!has_line) {
      emit(p, q, false);
    } else if (!has_const) {
      emit(p, q, true);
    } else {
      // Line overtakes the constant at t = best_c - best_line_c; the equality
      // point goes to whichever item came first.
      int64_t x = best_c - best_line_c;
      int64_t const_end = (ci < li) ? x : x - 1;
      emit(p, std::min(q, const_end), false);
      emit(std::max(p, const_end + 1), q, true);
    }
  }

  merge_adjacent(pieces);
  return MappedIntervalList{std::move(pieces)};
}

MappedIntervalList unite(const MappedIntervalList& a, const MappedIntervalList& b) {
  std::vector<MappedInterval> raw;
  raw.reserve(a.items.size() + b.items.size());
  raw.insert(raw.end(), a.items.begin(), a.items.end());
  raw.insert(raw.end(), b.items.begin(), b.items.end());
  return normalize(std::move(raw));
}

MappedIntervalList intersect(const MappedIntervalList& a, const FreeIntervalList& f) {
  MappedIntervalList out;
  size_t i = 0, j = 0;
  while (i < a.items.size() && j < f.v.size()) {
    const MappedInterval& m = a.items[i];
    const FreeInterval& g = f.v[j];
    int64_t lo = std::max(m.lo, g.lo), hi = std::min(m.hi, g.hi);
    if (lo <= hi) out.items.push_back({lo, hi, m.dep(lo), m.slope, m.prov});
    if (m.hi < g.hi)
      ++i;
    else
      ++j;
  }
  return out;
}

namespace {

// Pieces reachable from `piece` through one free pair: the literal translation
// by d truncated to the exit interval, plus the constant-departure continuation
// for exits the full-speed translation cannot reach. A flat piece collapses
// into one output piece: every exit pairs with the earliest entry.
void shift_piece(const MappedInterval& piece, int64_t d, const FreePair& pair,
                 ProvArena* arena, std::vector<MappedInterval>& translated,
                 std::vector<MappedInterval>& tails) {
  const FreeInterval& x = pair.exit;
  auto node = [&](ProvNode::Kind kind) {
    if (!arena) return int32_t(-1);
    ProvNode n;
    n.kind = kind;
    n.parent = piece.prov;
    n.lo = piece.lo; n.hi = piece.hi; n.dep_lo = piece.dep_lo; n.slope = piece.slope;
    n.param = d;
    return arena->add(n);
  };
  if (piece.slope == 0) {
    int64_t lo = std::max(piece.lo + d, x.lo);
    if (lo <= x.hi) translated.push_back({lo, x.hi, piece.dep_lo, 0, node(ProvNode::Kind::Slow)});
    return;
  }
  int64_t tlo = std::max(piece.lo + d, x.lo);
  int64_t thi = std::min(piece.hi + d, x.hi);
  if (tlo <= thi)
    translated.push_back({tlo, thi, piece.dep(tlo - d), piece.slope, node(ProvNode::Kind::Full)});
  int64_t wlo = std::max(x.lo, piece.hi + d + 1);
  if (wlo <= x.hi)
    tails.push_back({wlo, x.hi, piece.dep(piece.hi), 0, node(ProvNode::Kind::Slow)});
}

}  // namespace

MappedIntervalList shift(const MappedIntervalList& a, Duration d,
                         const FreeIntervalPairList& f, ProvArena* arena) {
  std::vector<MappedInterval> raw;
  for (const FreePair& pair : f.v) {
    std::vector<MappedInterval> translated, tails;
    for (const MappedInterval& m : a.items) {
      if (m.hi < pair.entry.lo || m.lo > pair.entry.hi) continue;
      MappedInterval piece = m;
      piece.lo = std::max(m.lo, pair.entry.lo);
      piece.hi = std::min(m.hi, pair.entry.hi);
      piece.dep_lo = m.dep(piece.lo);
      shift_piece(piece, d.sec, pair, arena, translated, tails);
    }
    // Full-speed pieces win equal-departure ties against slow continuations.
    raw.insert(raw.end(), translated.begin(), translated.end());
    raw.insert(raw.end(), tails.begin(), tails.end());
  }
  return normalize(std::move(raw));
}

MappedIntervalList extend(const MappedIntervalList& a, const FreeIntervalList& f,
                          Duration dwell, ProvArena* arena) {
  std::vector<MappedInterval> raw;
  for (const FreeInterval& g : f.v) {
    std::vector<MappedInterval> translated, tails;
    for (const MappedInterval& m : a.items) {
      if (m.hi < g.lo || m.lo > g.hi) continue;
      MappedInterval piece = m;
      piece.lo = std::max(m.lo, g.lo);
      piece.hi = std::min(m.hi, g.hi);
      piece.dep_lo = m.dep(piece.lo);
      FreePair as_pair{g, g};
      std::vector<MappedInterval> t2, w2;
      shift_piece(piece, dwell.sec, as_pair, nullptr, t2, w2);
      auto wrap = [&](const std::vector<MappedInterval>& src, std::vector<MappedInterval>& dst) {
        for (MappedInterval piece_out : src) {
          if (arena) {
            ProvNode n;
            n.kind = ProvNode::Kind::Wait;
            n.parent = piece.prov;
            n.lo = piece.lo; n.hi = piece.hi; n.dep_lo = piece.dep_lo; n.slope = piece.slope;
            n.param = dwell.sec;
            piece_out.prov = arena->add(n);
          } else {
            piece_out.prov = piece.prov;
          }
          dst.push_back(piece_out);
        }
      };
      wrap(t2, translated);
      wrap(w2, tails);
    }
    raw.insert(raw.end(), translated.begin(), translated.end());
    raw.insert(raw.end(), tails.begin(), tails.end());
  }
  return normalize(std::move(raw));
}

void check_canonical(const MappedIntervalList& l) {
  int64_t prev_hi = INT64_MIN;
  for (const auto& m : l.items) {
    if (m.lo > m.hi) throw std::logic_error("interval with lo > hi");
    if (m.slope != 0 && m.slope != 1) throw std::logic_error("slope outside {0,1}");
    if (prev_hi != INT64_MIN && m.lo <= prev_hi)
      throw std::logic_error("items overlap or are unsorted");
    prev_hi = m.hi;
  }
}

std::string to_string(const MappedIntervalList& l) {
  std::string s;
  for (const auto& m : l.items) {
    s += "[" + std::to_string(m.lo) + "," + std::to_string(m.hi) + "]->" +
         std::to_string(m.dep_lo) + (m.slope ? "+t " : " ");
  }
  return s.empty() ? "(empty)" : s;
}

std::string to_string(const FreeIntervalList& l) {
  std::string s;
  for (const auto& f : l.v) s += "[" + std::to_string(f.lo) + "," + std::to_string(f.hi) + "] ";
  return s.empty() ? "(empty)" : s;
}

}  // namespace pathinsert
