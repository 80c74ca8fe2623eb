#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "minuet/trace.hpp"
#include "minuet/types.hpp"

namespace minuet {

enum class GridErrorCode { WrongLength, BadChar, InconsistentGivens, NotACandidate, AlreadySolved };

class GridError : public std::runtime_error {
 public:
  GridError(GridErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  GridErrorCode code() const { return code_; }

 private:
  GridErrorCode code_;
};

enum class Origin : std::uint8_t { Given, Deduced };

struct Ink {
  Digit digit;
  Origin origin;
  friend bool operator==(const Ink&, const Ink&) = default;
};

// A cell is either inked or carries pencil candidates.
using CellState = std::variant<Ink, CandidateSet>;

// 81 cells. Unsolved cells start with the full pencil set {1..9}; the
// public mutators only ink a cell or erase pencil marks, never the reverse.
class Grid {
 public:
  Grid() { candidates_.fill(CandidateSet::all()); }

  bool solved(CellIndex c) const { return digits_[c] != 0; }
  Digit digit(CellIndex c) const { return digits_[c]; }
  Origin origin(CellIndex c) const { return origin_[c]; }
  CandidateSet candidates(CellIndex c) const { return candidates_[c]; }

  // Ink cells retain only their digit; pencil cells retain their candidates.
  CandidateSet retained(CellIndex c) const {
    return solved(c) ? CandidateSet::single(digits_[c]) : candidates_[c];
  }

  CellState state(CellIndex c) const {
    if (solved(c)) return Ink{digits_[c], origin_[c]};
    return candidates_[c];
  }

  int solved_count() const {
    int n = 0;
    for (Digit d : digits_) n += d != 0;
    return n;
  }
  bool complete() const { return solved_count() == kCells; }

  int given_count() const {
    int n = 0;
    for (CellIndex c = 0; c < kCells; ++c) n += solved(c) && origin_[c] == Origin::Given;
    return n;
  }

  // Total pencil marks over unsolved cells.
  int candidate_count() const {
    int n = 0;
    for (CellIndex c = 0; c < kCells; ++c) {
      if (!solved(c)) n += candidates_[c].size();
    }
    return n;
  }

  // Digits inked anywhere in the structure.
  CandidateSet inked_in(StructureId s) const {
    CandidateSet out;
    for (CellIndex c : cells_of_structure(s)) {
      if (solved(c)) out.insert(digits_[c]);
    }
    return out;
  }

  // Construction-time only: no checks beyond range.
  void set_given(CellIndex c, Digit d) { ink(c, d, Origin::Given); }

  void ink(CellIndex c, Digit d, Origin origin = Origin::Deduced) {
    digits_[c] = static_cast<std::uint8_t>(d);
    origin_[c] = origin;
    candidates_[c] = CandidateSet{};
  }

  // Removes `digits` from an unsolved cell's pencil; returns what was removed.
  CandidateSet erase(CellIndex c, CandidateSet digits) {
    const CandidateSet removed = candidates_[c] & digits;
    candidates_[c] = candidates_[c] - digits;
    return removed;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::array<std::uint8_t, kCells> digits_{};
  std::array<Origin, kCells> origin_{};
  std::array<CandidateSet, kCells> candidates_{};
};

inline Grid parse_grid(std::string_view text) {
  Grid g;
  int n = 0;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
    if (ch != '.' && (ch < '0' || ch > '9')) {
      throw GridError(GridErrorCode::BadChar, std::string("bad character '") + ch + "'");
    }
    if (n < kCells && ch >= '1' && ch <= '9') g.set_given(n, ch - '0');
    ++n;
  }
  if (n != kCells) {
    throw GridError(GridErrorCode::WrongLength, "expected 81 cells, got " + std::to_string(n));
  }
  for (int s = 0; s < kStructures; ++s) {
    CandidateSet seen;
    for (CellIndex c : cells_of_structure(StructureId::from_index(s))) {
      if (!g.solved(c)) continue;
      if (seen.contains(g.digit(c))) {
        throw GridError(GridErrorCode::InconsistentGivens,
                        "digit " + std::to_string(g.digit(c)) + " given twice in " +
                            to_string(StructureId::from_index(s)));
      }
      seen.insert(g.digit(c));
    }
  }
  return g;
}

inline std::string serialize_grid(const Grid& g) {
  std::string out(kCells, '.');
  for (CellIndex c = 0; c < kCells; ++c) {
    if (g.solved(c)) out[c] = static_cast<char>('0' + g.digit(c));
  }
  return out;
}

// Inks d at cell and erases d from its 20 peers (blocking by a single).
inline void place_ink(Grid& g, CellIndex cell, Digit d, const Log& log = {}) {
  if (g.solved(cell)) throw GridError(GridErrorCode::AlreadySolved, cell_name(cell) + " is already solved");
  if (!g.candidates(cell).contains(d)) {
    throw GridError(GridErrorCode::NotACandidate, std::to_string(d) + " is not a candidate of " + cell_name(cell));
  }
  g.ink(cell, d);
  log.ink(cell, d);
  const CandidateSet mask = CandidateSet::single(d);
  for (CellIndex p : peers_of(cell)) {
    if (g.solved(p)) continue;
    if (!g.erase(p, mask).empty()) log.erase(p, mask);
  }
}

// Restricts a cell's pencil to `keep`, logging the erasure.
inline bool restrict_to(Grid& g, CellIndex c, CandidateSet keep, const Log& log) {
  const CandidateSet removed = g.erase(c, keep.complement());
  if (removed.empty()) return false;
  log.erase(c, removed);
  return true;
}

inline bool erase_logged(Grid& g, CellIndex c, CandidateSet digits, const Log& log) {
  const CandidateSet removed = g.erase(c, digits);
  if (removed.empty()) return false;
  log.erase(c, removed);
  return true;
}

// Rule 21: `cells` are known to hold exactly `digits` in some order. Strips
// other digits from those cells and erases `digits` from every other cell of
// each structure containing all of them. Returns whether anything changed.
inline bool claim_group(Grid& g, std::span<const CellIndex> cells, CandidateSet digits, const Log& log) {
  bool changed = false;
  for (CellIndex c : cells) {
    if (!g.solved(c)) changed |= restrict_to(g, c, digits, log);
  }
  for (int s = 0; s < kStructures; ++s) {
    const StructureId sid = StructureId::from_index(s);
    if (!std::all_of(cells.begin(), cells.end(), [&](CellIndex c) { return contains_cell(sid, c); })) continue;
    for (CellIndex o : cells_of_structure(sid)) {
      if (g.solved(o) || std::find(cells.begin(), cells.end(), o) != cells.end()) continue;
      changed |= erase_logged(g, o, digits, log);
    }
  }
  return changed;
}

// claim_group, logging a Find for the group only when it changed the grid.
inline bool apply_group(Grid& g, StructureId s, std::span<const CellIndex> cells, CandidateSet digits,
                        const Log& log) {
  const std::size_t mark = log.trace ? log.trace->size() : 0;
  if (!claim_group(g, cells, digits, log)) return false;
  if (log.trace) {
    TraceEvent e{log.step, log.rule, Action::Find, s, {-1, -1, -1}, 0, digits};
    for (CellIndex c : cells) {
      if (e.cell_count < 3) e.cells[e.cell_count++] = c;
    }
    log.trace->insert(log.trace->begin() + static_cast<std::ptrdiff_t>(mark), e);
  }
  return true;
}

struct Consistency {
  enum class Kind : std::uint8_t { Ok, Conflict, Starved, EmptyCell };
  Kind kind = Kind::Ok;
  StructureId structure{};
  Digit digit = 0;
  CellIndex cell = -1;

  bool ok() const { return kind == Kind::Ok; }

  static Consistency conflict(StructureId s, Digit d) { return {Kind::Conflict, s, d, -1}; }
  static Consistency starved(StructureId s, Digit d) { return {Kind::Starved, s, d, -1}; }
  static Consistency empty_cell(CellIndex c) { return {Kind::EmptyCell, {}, 0, c}; }

  friend bool operator==(const Consistency&, const Consistency&) = default;
};

inline std::string to_string(const Consistency& c) {
  switch (c.kind) {
    case Consistency::Kind::Ok: return "ok";
    case Consistency::Kind::Conflict:
      return "conflict: " + std::to_string(c.digit) + " twice in " + to_string(c.structure);
    case Consistency::Kind::Starved:
      return "starved: " + std::to_string(c.digit) + " has no place in " + to_string(c.structure);
    case Consistency::Kind::EmptyCell: return "empty cell: " + cell_name(c.cell);
  }
  return "?";
}

// Structures are scanned in index order (conflict before starvation within
// each); empty cells are checked after all structures.
inline Consistency check_consistency(const Grid& g) {
  for (int i = 0; i < kStructures; ++i) {
    const StructureId s = StructureId::from_index(i);
    CandidateSet inked, pencil;
    for (CellIndex c : cells_of_structure(s)) {
      if (g.solved(c)) {
        if (inked.contains(g.digit(c))) return Consistency::conflict(s, g.digit(c));
        inked.insert(g.digit(c));
      } else {
        pencil |= g.candidates(c);
      }
    }
    const CandidateSet missing = (inked | pencil).complement();
    if (!missing.empty()) return Consistency::starved(s, missing.first());
  }
  for (CellIndex c = 0; c < kCells; ++c) {
    if (!g.solved(c) && g.candidates(c).empty()) return Consistency::empty_cell(c);
  }
  return {};
}

// Applies a trace's ink and erase events to `start`.
inline Grid replay(Grid start, const Trace& trace) {
  for (const TraceEvent& e : trace) {
    if (e.action == Action::Ink) {
      start.ink(e.cell(), e.digits.first());
    } else if (e.action == Action::Erase) {
      start.erase(e.cell(), e.digits);
    }
  }
  return start;
}

}  // namespace minuet
