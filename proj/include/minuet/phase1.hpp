#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "minuet/grid.hpp"

// Phase I: numbers look for cells box by box (Step 1), then every empty cell
// receives its unblocked candidates (Step 2).
//
// An unsolved cell still holding the full pencil set {1..9} is what the hand
// method calls an empty cell. Hidden doubles and triples narrow their cells'
// pencil, which is how those cells become unavailable to other digits.
namespace minuet::phase1 {

struct CellPair {
  CellIndex a = -1;
  CellIndex b = -1;
  friend bool operator==(const CellPair&, const CellPair&) = default;
};

// (structure, digit) -> the two cells the digit is confined to.
class HalfDoubleRegistry {
 public:
  struct Entry {
    StructureId structure;
    Digit digit;
    CellPair cells;
  };

  std::optional<CellPair> find(StructureId s, Digit d) const { return slots_[s.index()][d]; }
  void set(StructureId s, Digit d, CellPair p) { slots_[s.index()][d] = p; }
  void erase(StructureId s, Digit d) { slots_[s.index()][d].reset(); }
  void clear() { *this = HalfDoubleRegistry{}; }

  // Entries in (structure index, digit) order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (int s = 0; s < kStructures; ++s) {
      for (Digit d = 1; d <= 9; ++d) {
        if (slots_[s][d]) out.push_back({StructureId::from_index(s), d, *slots_[s][d]});
      }
    }
    return out;
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& row : slots_) {
      for (const auto& slot : row) n += slot.has_value();
    }
    return n;
  }

  friend bool operator==(const HalfDoubleRegistry&, const HalfDoubleRegistry&) = default;

 private:
  std::array<std::array<std::optional<CellPair>, 10>, kStructures> slots_{};
};

struct Phase1Find {
  enum class Kind { HiddenSingle, HalfDouble, HiddenDouble, HiddenTriple, PassiveSingle, NakedSingle };
  Kind kind;
  StructureId box;
  std::array<CellIndex, 3> cells{-1, -1, -1};
  CandidateSet digits;
};

struct Phase1Result {
  Consistency status;
  std::vector<Phase1Find> finds;
  int passes = 0;
  bool ok() const { return status.ok(); }
};

namespace detail {

inline bool shares_structure(CellIndex c, CellIndex a, CellIndex b) {
  return (row_of(c) == row_of(a) && row_of(c) == row_of(b)) || (col_of(c) == col_of(a) && col_of(c) == col_of(b)) ||
         (box_of(c) == box_of(a) && box_of(c) == box_of(b));
}

inline bool ink_blocks(const Grid& g, CellIndex c, Digit d) {
  for (StructureId s : structures_of(c)) {
    if (g.inked_in(s).contains(d)) return true;
  }
  return false;
}

// Rule 20: a half double of d in another structure blocks d from every
// other cell of the structures containing both of its cells.
inline bool half_double_blocks(const HalfDoubleRegistry& reg, CellIndex c, Digit d, StructureId skip) {
  for (int s = 0; s < kStructures; ++s) {
    const StructureId sid = StructureId::from_index(s);
    if (sid == skip) continue;
    const auto p = reg.find(sid, d);
    if (!p || c == p->a || c == p->b) continue;
    if (shares_structure(c, p->a, p->b)) return true;
  }
  return false;
}

inline bool cell_available(const Grid& g, CellIndex c, Digit d) {
  return !g.solved(c) && g.candidates(c).contains(d) && !ink_blocks(g, c, d);
}

}  // namespace detail

// Cells of `box` still open to d: not inked, d still pencilled (or implied),
// d not inked in the covering row/column, and d not blocked by a half double
// elsewhere.
inline std::vector<CellIndex> available_cells(const Grid& g, const HalfDoubleRegistry& reg, StructureId box, Digit d) {
  std::vector<CellIndex> out;
  for (CellIndex c : cells_of_structure(box)) {
    if (!detail::cell_available(g, c, d)) continue;
    if (detail::half_double_blocks(reg, c, d, box)) continue;
    out.push_back(c);
  }
  return out;
}

namespace detail {

// Rule 22 applied eagerly: a registered half double that lost one cell
// becomes a single in the other. Loops until no entry fires.
inline Consistency settle_passive(Grid& g, HalfDoubleRegistry& reg, std::vector<Phase1Find>& finds, const Log& log) {
  for (bool fired = true; fired;) {
    fired = false;
    for (const auto& e : reg.entries()) {
      const CellIndex a = e.cells.a, b = e.cells.b;
      if ((g.solved(a) && g.digit(a) == e.digit) || (g.solved(b) && g.digit(b) == e.digit)) {
        reg.erase(e.structure, e.digit);
        continue;
      }
      const bool open_a = cell_available(g, a, e.digit);
      const bool open_b = cell_available(g, b, e.digit);
      if (open_a && open_b) continue;
      reg.erase(e.structure, e.digit);
      if (!open_a && !open_b) return Consistency::starved(e.structure, e.digit);
      const CellIndex target = open_a ? a : b;
      const Log l = log.with(Step::Step1_1, Rule::PassiveSingle);
      l.find(e.structure, {target}, CandidateSet::single(e.digit));
      place_ink(g, target, e.digit, l);
      finds.push_back({Phase1Find::Kind::PassiveSingle, e.structure, {target, -1, -1}, CandidateSet::single(e.digit)});
      fired = true;
      break;
    }
  }
  return {};
}

}  // namespace detail

// One pass over digits 1..9 x boxes 0..8. Finds are applied as they are made.
// Every (box, digit) slot of the registry is re-evaluated during the pass; a
// half double counts as a find only if it differs from the slot's previous
// value.
inline Phase1Result step1_scan(Grid& g, HalfDoubleRegistry& reg, bool triples_enabled, const Log& log = {}) {
  Phase1Result result;
  result.passes = 1;
  const HalfDoubleRegistry before = reg;
  auto& finds = result.finds;

  for (Digit d = 1; d <= 9; ++d) {
    for (int b = 0; b < 9; ++b) {
      const StructureId box = StructureId::box(b);
      if (g.inked_in(box).contains(d)) {
        reg.erase(box, d);
        continue;
      }
      const auto avail = available_cells(g, reg, box, d);
      if (avail.empty()) {
        result.status = Consistency::starved(box, d);
        return result;
      }
      if (avail.size() == 1) {
        reg.erase(box, d);
        const Log l = log.with(Step::Step1_1, Rule::HiddenSingle);
        l.find(box, {avail[0]}, CandidateSet::single(d));
        place_ink(g, avail[0], d, l);
        finds.push_back({Phase1Find::Kind::HiddenSingle, box, {avail[0], -1, -1}, CandidateSet::single(d)});
        result.status = detail::settle_passive(g, reg, finds, log);
        if (!result.ok()) return result;
        continue;
      }
      if (avail.size() > 2) {
        reg.erase(box, d);
        continue;
      }

      const CellPair pair{avail[0], avail[1]};
      reg.set(box, d, pair);
      if (before.find(box, d) != pair) {
        log.with(Step::Step1_2, Rule::HalfDouble).find(box, {pair.a, pair.b}, CandidateSet::single(d));
        finds.push_back({Phase1Find::Kind::HalfDouble, box, {pair.a, pair.b, -1}, CandidateSet::single(d)});
      }

      // Two half doubles on the same two cells are a hidden double.
      for (Digit e = 1; e <= 9; ++e) {
        if (e == d || reg.find(box, e) != pair) continue;
        const CandidateSet digits = CandidateSet::of({d, e});
        const std::array<CellIndex, 2> cells{pair.a, pair.b};
        if (apply_group(g, box, cells, digits, log.with(Step::Step1_3, Rule::HiddenDouble))) {
          finds.push_back({Phase1Find::Kind::HiddenDouble, box, {pair.a, pair.b, -1}, digits});
        }
      }

      // Optional: three half doubles confined to the same three cells.
      if (triples_enabled) {
        for (Digit e = 1; e <= 9; ++e) {
          for (Digit f = e + 1; f <= 9; ++f) {
            if (e == d || f == d) continue;
            const auto pe = reg.find(box, e), pf = reg.find(box, f);
            if (!pe || !pf) continue;
            std::array<CellIndex, 6> all{pair.a, pair.b, pe->a, pe->b, pf->a, pf->b};
            std::sort(all.begin(), all.end());
            const auto last = std::unique(all.begin(), all.end());
            if (last - all.begin() != 3) continue;
            const std::array<CellIndex, 3> cells{all[0], all[1], all[2]};
            const CandidateSet digits = CandidateSet::of({d, e, f});
            if (apply_group(g, box, cells, digits, log.with(Step::Step1_3, Rule::HiddenTriple))) {
              finds.push_back({Phase1Find::Kind::HiddenTriple, box, cells, digits});
            }
          }
        }
      }

      result.status = detail::settle_passive(g, reg, finds, log);
      if (!result.ok()) return result;
      for (CellIndex c : cells_of_structure(box)) {
        if (!g.solved(c) && g.candidates(c).empty()) {
          result.status = Consistency::empty_cell(c);
          return result;
        }
      }
    }
  }
  return result;
}

// Repeats step1_scan until a pass makes no finds.
inline Phase1Result step1_fixpoint(Grid& g, HalfDoubleRegistry& reg, bool triples_enabled, const Log& log = {}) {
  Phase1Result total;
  while (true) {
    Phase1Result pass = step1_scan(g, reg, triples_enabled, log);
    ++total.passes;
    total.finds.insert(total.finds.end(), pass.finds.begin(), pass.finds.end());
    if (!pass.ok()) {
      total.status = pass.status;
      return total;
    }
    if (pass.finds.empty()) return total;
  }
}

// Step 2: every unsolved cell keeps only the digits not blocked by ink in its
// structures or by a registered half double; resulting naked singles are
// inked.
inline Phase1Result step2_fill(Grid& g, const HalfDoubleRegistry& reg, const Log& log = {}) {
  Phase1Result result;
  result.passes = 1;
  const Log fill = log.with(Step::Step2, Rule::CandidateFill);
  fill.find(std::nullopt, {}, {});
  for (CellIndex c = 0; c < kCells; ++c) {
    if (g.solved(c)) continue;
    CandidateSet blocked;
    for (StructureId s : structures_of(c)) blocked |= g.inked_in(s);
    for (const auto& e : reg.entries()) {
      if (c == e.cells.a || c == e.cells.b) continue;
      if (g.solved(e.cells.a) || g.solved(e.cells.b)) continue;
      if (detail::shares_structure(c, e.cells.a, e.cells.b)) blocked.insert(e.digit);
    }
    erase_logged(g, c, blocked, fill);
    if (g.candidates(c).empty()) {
      result.status = Consistency::empty_cell(c);
      return result;
    }
  }
  const Log naked = log.with(Step::Step2, Rule::NakedSingle);
  for (bool again = true; again;) {
    again = false;
    for (CellIndex c = 0; c < kCells; ++c) {
      if (g.solved(c)) continue;
      if (g.candidates(c).empty()) {
        result.status = Consistency::empty_cell(c);
        return result;
      }
      if (g.candidates(c).size() != 1) continue;
      const Digit d = g.candidates(c).first();
      naked.find(std::nullopt, {c}, CandidateSet::single(d));
      place_ink(g, c, d, naked);
      result.finds.push_back({Phase1Find::Kind::NakedSingle, StructureId::box(box_of(c)), {c, -1, -1},
                              CandidateSet::single(d)});
      again = true;
    }
  }
  return result;
}

}  // namespace minuet::phase1
