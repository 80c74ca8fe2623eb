#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "minuet/grid.hpp"

// Phase II basic cleanup (Step 3): singles, doubles and triples in every
// structure, each find followed by its blocking cleanup, repeated to a
// fixpoint. Hypothesis views run the same code on their shadow grids.
namespace minuet::cleanup {

struct GroupFind {
  enum class Kind { NakedSingle, HiddenSingle, NakedDouble, HiddenDouble, NakedTriple, HiddenTriple };
  Kind kind;
  StructureId structure;
  std::array<CellIndex, 3> cells{-1, -1, -1};
  CandidateSet digits;
};

using FindList = std::vector<GroupFind>;

struct Options {
  // Doubles are only searched with >= 4 unsolved cells, triples with >= 6.
  bool guards = true;
};

struct Result {
  Consistency status;
  int finds = 0;
  int sweeps = 0;
  bool ok() const { return status.ok(); }
};

struct HalfDouble {
  Digit digit;
  CellIndex a;
  CellIndex b;
};

// Digits pencilled in exactly two cells of a structure; always computed from
// the current candidates.
struct MarginHalfDoubles {
  std::array<HalfDouble, 9> items{};
  int count = 0;
  const HalfDouble* begin() const { return items.data(); }
  const HalfDouble* end() const { return items.data() + count; }
};

namespace detail {

// Slot mask (bit k = k-th cell of the structure) of unsolved cells holding d.
inline std::uint16_t positions(const Grid& g, StructureId s, Digit d) {
  std::uint16_t mask = 0;
  const auto& cells = cells_of_structure(s);
  for (int k = 0; k < 9; ++k) {
    if (!g.solved(cells[k]) && g.candidates(cells[k]).contains(d)) mask |= static_cast<std::uint16_t>(1u << k);
  }
  return mask;
}

inline int unsolved_in(const Grid& g, StructureId s) {
  int n = 0;
  for (CellIndex c : cells_of_structure(s)) n += !g.solved(c);
  return n;
}

template <std::size_t N>
GroupFind make_find(GroupFind::Kind kind, StructureId s, const std::array<CellIndex, N>& cells, CandidateSet digits) {
  GroupFind f{kind, s, {-1, -1, -1}, digits};
  for (std::size_t i = 0; i < N; ++i) f.cells[i] = cells[i];
  return f;
}

}  // namespace detail

inline MarginHalfDoubles margin_half_doubles(const Grid& g, StructureId s) {
  MarginHalfDoubles out;
  const auto& cells = cells_of_structure(s);
  for (Digit d = 1; d <= 9; ++d) {
    const std::uint16_t pos = detail::positions(g, s, d);
    if (std::popcount(pos) != 2) continue;
    const int first = std::countr_zero(pos);
    const int second = std::countr_zero(static_cast<std::uint16_t>(pos & (pos - 1)));
    out.items[out.count++] = {d, cells[first], cells[second]};
  }
  return out;
}

// Step 3.1. Naked singles (one candidate left) and hidden singles (a digit
// pencilled in one cell of the structure), each inked with Rule 19 cleanup.
inline Result detect_singles(Grid& g, StructureId s, const Log& log = {}, FindList* found = nullptr) {
  Result r;
  const Log naked = log.with(Step::Step3_1, Rule::NakedSingle);
  for (CellIndex c : cells_of_structure(s)) {
    if (g.solved(c)) continue;
    const CandidateSet cand = g.candidates(c);
    if (cand.empty()) {
      r.status = Consistency::empty_cell(c);
      return r;
    }
    if (cand.size() != 1) continue;
    naked.find(s, {c}, cand);
    place_ink(g, c, cand.first(), naked);
    ++r.finds;
    if (found) found->push_back({GroupFind::Kind::NakedSingle, s, {c, -1, -1}, cand});
  }
  const Log hidden = log.with(Step::Step3_1, Rule::HiddenSingle);
  const auto& cells = cells_of_structure(s);
  for (Digit d = 1; d <= 9; ++d) {
    if (g.inked_in(s).contains(d)) continue;
    const std::uint16_t pos = detail::positions(g, s, d);
    if (pos == 0) {
      r.status = Consistency::starved(s, d);
      return r;
    }
    if (std::popcount(pos) != 1) continue;
    const CellIndex c = cells[std::countr_zero(pos)];
    hidden.find(s, {c}, CandidateSet::single(d));
    place_ink(g, c, d, hidden);
    ++r.finds;
    if (found) found->push_back({GroupFind::Kind::HiddenSingle, s, {c, -1, -1}, CandidateSet::single(d)});
  }
  return r;
}

// Step 3.2. Naked doubles (two cells with the same two candidates) and hidden
// doubles (two half doubles on the same two cells), with Rule 21 cleanup.
// Only finds that change the grid are counted.
inline Result detect_doubles(Grid& g, StructureId s, const Log& log = {}, FindList* found = nullptr,
                             Options opts = {}) {
  Result r;
  if (opts.guards && detail::unsolved_in(g, s) < 4) return r;
  const auto& cells = cells_of_structure(s);

  const Log naked = log.with(Step::Step3_2, Rule::NakedDouble);
  for (int i = 0; i < 9; ++i) {
    const CellIndex a = cells[i];
    if (g.solved(a) || g.candidates(a).size() != 2) continue;
    for (int j = i + 1; j < 9; ++j) {
      const CellIndex b = cells[j];
      if (g.solved(b) || g.candidates(b) != g.candidates(a)) continue;
      const CandidateSet digits = g.candidates(a);
      const std::array<CellIndex, 2> pair{a, b};
      if (apply_group(g, s, pair, digits, naked)) {
        ++r.finds;
        if (found) found->push_back(detail::make_find(GroupFind::Kind::NakedDouble, s, pair, digits));
      }
    }
  }

  const Log hidden = log.with(Step::Step3_2, Rule::HiddenDouble);
  const MarginHalfDoubles margin = margin_half_doubles(g, s);
  for (int i = 0; i < margin.count; ++i) {
    for (int j = i + 1; j < margin.count; ++j) {
      const HalfDouble& x = margin.items[i];
      const HalfDouble& y = margin.items[j];
      if (x.a != y.a || x.b != y.b) continue;
      const CandidateSet digits = CandidateSet::of({x.digit, y.digit});
      const std::array<CellIndex, 2> pair{x.a, x.b};
      if (apply_group(g, s, pair, digits, hidden)) {
        ++r.finds;
        if (found) found->push_back(detail::make_find(GroupFind::Kind::HiddenDouble, s, pair, digits));
      }
    }
  }
  return r;
}

// Step 3.3. Naked triples (three cells of 2-3 candidates drawn from three
// digits) and hidden triples (three digits, each pencilled 2-3 times, confined
// to the same three cells), with Rule 21 cleanup.
inline Result detect_triples(Grid& g, StructureId s, const Log& log = {}, FindList* found = nullptr,
                             Options opts = {}) {
  Result r;
  if (opts.guards && detail::unsolved_in(g, s) < 6) return r;
  const auto& cells = cells_of_structure(s);

  const Log naked = log.with(Step::Step3_3, Rule::NakedTriple);
  auto small = [&](int k) {
    const CellIndex c = cells[k];
    return !g.solved(c) && g.candidates(c).size() >= 2 && g.candidates(c).size() <= 3;
  };
  for (int i = 0; i < 9; ++i) {
    for (int j = i + 1; j < 9; ++j) {
      for (int k = j + 1; k < 9; ++k) {
        if (!small(i) || !small(j) || !small(k)) continue;
        const CandidateSet digits =
            g.candidates(cells[i]) | g.candidates(cells[j]) | g.candidates(cells[k]);
        if (digits.size() != 3) continue;
        const std::array<CellIndex, 3> trio{cells[i], cells[j], cells[k]};
        if (apply_group(g, s, trio, digits, naked)) {
          ++r.finds;
          if (found) found->push_back(detail::make_find(GroupFind::Kind::NakedTriple, s, trio, digits));
        }
      }
    }
  }

  const Log hidden = log.with(Step::Step3_3, Rule::HiddenTriple);
  for (Digit d1 = 1; d1 <= 9; ++d1) {
    for (Digit d2 = d1 + 1; d2 <= 9; ++d2) {
      for (Digit d3 = d2 + 1; d3 <= 9; ++d3) {
        const std::uint16_t p1 = detail::positions(g, s, d1);
        const std::uint16_t p2 = detail::positions(g, s, d2);
        const std::uint16_t p3 = detail::positions(g, s, d3);
        auto fits = [](std::uint16_t p) { return std::popcount(p) == 2 || std::popcount(p) == 3; };
        if (!fits(p1) || !fits(p2) || !fits(p3)) continue;
        const std::uint16_t all = static_cast<std::uint16_t>(p1 | p2 | p3);
        if (std::popcount(all) != 3) continue;
        std::array<CellIndex, 3> trio{};
        int n = 0;
        for (std::uint16_t rest = all; rest; rest &= static_cast<std::uint16_t>(rest - 1)) {
          trio[n++] = cells[std::countr_zero(rest)];
        }
        const CandidateSet digits = CandidateSet::of({d1, d2, d3});
        if (apply_group(g, s, trio, digits, hidden)) {
          ++r.finds;
          if (found) found->push_back(detail::make_find(GroupFind::Kind::HiddenTriple, s, trio, digits));
        }
      }
    }
  }
  return r;
}

// Sweeps the 27 structures (singles, doubles, triples in each) until a whole
// sweep finds nothing. Every counted find erases at least one candidate, so
// this terminates.
inline Result step3_fixpoint(Grid& g, const Log& log = {}, Options opts = {}, FindList* found = nullptr) {
  Result total;
  while (true) {
    ++total.sweeps;
    int sweep_finds = 0;
    for (int i = 0; i < kStructures; ++i) {
      const StructureId s = StructureId::from_index(i);
      Result r = detect_singles(g, s, log, found);
      if (r.ok()) {
        sweep_finds += r.finds;
        r = detect_doubles(g, s, log, found, opts);
      }
      if (r.ok()) {
        sweep_finds += r.finds;
        r = detect_triples(g, s, log, found, opts);
      }
      sweep_finds += r.finds;
      if (!r.ok()) {
        total.status = r.status;
        total.finds += sweep_finds;
        return total;
      }
    }
    total.finds += sweep_finds;
    if (sweep_finds == 0) return total;
  }
}

}  // namespace minuet::cleanup
