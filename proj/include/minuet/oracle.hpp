#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "minuet/grid.hpp"

// Brute-force backtracking over the inked cells of a grid. Pencil marks are
// ignored, and nothing here depends on the deduction rules, so the oracle is
// an independent check on the solver.
namespace minuet::oracle {

enum class SearchOrder { MostConstrained, Naive };

namespace detail {

class Search {
 public:
  Search(const Grid& g, SearchOrder order) : order_(order) {
    for (CellIndex c = 0; c < kCells; ++c) {
      if (!g.solved(c)) continue;
      const std::uint16_t bit = static_cast<std::uint16_t>(1u << g.digit(c));
      if ((rows_[row_of(c)] | cols_[col_of(c)] | boxes_[box_of(c)]) & bit) {
        conflict_ = true;
        return;
      }
      set(c, g.digit(c));
    }
  }

  bool conflict() const { return conflict_; }

  // Counts completions up to `cap`; the first one found is kept.
  long count(long cap) {
    cap_ = cap;
    found_ = 0;
    if (!conflict_) dfs();
    return found_;
  }

  const std::array<std::uint8_t, kCells>& first_solution() const { return first_; }
  long nodes() const { return nodes_; }

 private:
  static constexpr std::uint16_t kAll = 0x3FE;

  std::uint16_t allowed(CellIndex c) const {
    return static_cast<std::uint16_t>(kAll & ~(rows_[row_of(c)] | cols_[col_of(c)] | boxes_[box_of(c)]));
  }
  void set(CellIndex c, Digit d) {
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << d);
    cells_[c] = static_cast<std::uint8_t>(d);
    rows_[row_of(c)] |= bit;
    cols_[col_of(c)] |= bit;
    boxes_[box_of(c)] |= bit;
  }
  void unset(CellIndex c, Digit d) {
    const std::uint16_t bit = static_cast<std::uint16_t>(~(1u << d));
    cells_[c] = 0;
    rows_[row_of(c)] &= bit;
    cols_[col_of(c)] &= bit;
    boxes_[box_of(c)] &= bit;
  }

  void dfs() {
    ++nodes_;
    CellIndex best = -1;
    int best_count = 10;
    for (CellIndex c = 0; c < kCells; ++c) {
      if (cells_[c]) continue;
      const int n = std::popcount(allowed(c));
      if (n == 0) return;
      if (order_ == SearchOrder::Naive) {
        best = c;
        break;
      }
      if (n < best_count) {
        best = c;
        best_count = n;
        if (n == 1) break;
      }
    }
    if (best < 0) {
      if (found_++ == 0) first_ = cells_;
      return;
    }
    for (std::uint16_t rest = allowed(best); rest; rest &= static_cast<std::uint16_t>(rest - 1)) {
      const Digit d = std::countr_zero(rest);
      set(best, d);
      dfs();
      unset(best, d);
      if (found_ >= cap_) return;
    }
  }

  SearchOrder order_;
  std::array<std::uint8_t, kCells> cells_{};
  std::array<std::uint16_t, 9> rows_{}, cols_{}, boxes_{};
  std::array<std::uint8_t, kCells> first_{};
  bool conflict_ = false;
  long cap_ = 1;
  long found_ = 0;
  long nodes_ = 0;
};

}  // namespace detail

// min(cap, number of valid completions of the inked cells).
inline long count_solutions(const Grid& g, long cap = 2, SearchOrder order = SearchOrder::MostConstrained) {
  if (cap < 1) throw std::invalid_argument("count_solutions: cap must be >= 1");
  detail::Search search(g, order);
  return search.count(cap);
}

class NotWellPosed : public std::runtime_error {
 public:
  explicit NotWellPosed(long solutions)
      : std::runtime_error(solutions == 0 ? "puzzle has no solution" : "puzzle has more than one solution"),
        solutions_(solutions) {}
  long solutions() const { return solutions_; }

 private:
  long solutions_;
};

namespace detail {

inline Grid completed(const Grid& g, const std::array<std::uint8_t, kCells>& digits) {
  Grid out;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (g.solved(c)) out.ink(c, g.digit(c), g.origin(c));
    else out.ink(c, digits[c], Origin::Deduced);
  }
  return out;
}

}  // namespace detail

// The unique completion; throws NotWellPosed otherwise.
inline Grid brute_solve(const Grid& g) {
  detail::Search search(g, SearchOrder::MostConstrained);
  const long n = search.count(2);
  if (n != 1) throw NotWellPosed(n);
  return detail::completed(g, search.first_solution());
}

struct WellPosedness {
  enum class Kind { WellPosed, NoSolution, MultipleSolutions };
  Kind kind = Kind::NoSolution;
  std::optional<Grid> solution;
  bool searched = false;

  bool well_posed() const { return kind == Kind::WellPosed; }
};

inline const char* to_string(WellPosedness::Kind k) {
  switch (k) {
    case WellPosedness::Kind::WellPosed: return "WellPosed";
    case WellPosedness::Kind::NoSolution: return "NoSolution";
    case WellPosedness::Kind::MultipleSolutions: return "MultipleSolutions";
  }
  return "?";
}

// No uniquely solvable puzzle has fewer than 17 givens.
inline constexpr int kMinimumClues = 17;

inline WellPosedness verify_well_posed(const Grid& g) {
  detail::Search search(g, SearchOrder::MostConstrained);
  if (search.conflict()) return {WellPosedness::Kind::NoSolution, std::nullopt, false};
  if (g.solved_count() < kMinimumClues) return {WellPosedness::Kind::MultipleSolutions, std::nullopt, false};
  const long n = search.count(2);
  if (n == 0) return {WellPosedness::Kind::NoSolution, std::nullopt, true};
  if (n > 1) return {WellPosedness::Kind::MultipleSolutions, std::nullopt, true};
  return {WellPosedness::Kind::WellPosed, detail::completed(g, search.first_solution()), true};
}

}  // namespace minuet::oracle
