// Deterministic puzzle corpus generator.
//
// Puzzles are minimal (no given can be removed without losing uniqueness) and
// are rated by a small technique-based rater that is independent of the
// minuet solver:
//   easy   - solved by naked and hidden singles alone
//   medium - needs locked candidates or naked/hidden subsets of size <= 3
//   hard   - not solved by any of the above
// `sixteen` emits consistent 16-given grids cut from random solutions.

#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "minuet/grid.hpp"
#include "minuet/oracle.hpp"

namespace {

using namespace minuet;
using Mask = std::uint16_t;
constexpr Mask kAll = 0x3FE;

bool fill_random(std::array<int, kCells>& cells, int pos, std::mt19937_64& rng) {
  if (pos == kCells) return true;
  Mask used = 0;
  for (CellIndex p : peers_of(pos)) {
    if (cells[p]) used |= static_cast<Mask>(1u << cells[p]);
  }
  std::array<int, 9> digits{1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::shuffle(digits.begin(), digits.end(), rng);
  for (int d : digits) {
    if (used & (1u << d)) continue;
    cells[pos] = d;
    if (fill_random(cells, pos + 1, rng)) return true;
  }
  cells[pos] = 0;
  return false;
}

std::array<int, kCells> random_solution(std::mt19937_64& rng) {
  std::array<int, kCells> cells{};
  fill_random(cells, 0, rng);
  return cells;
}

Grid to_grid(const std::array<int, kCells>& cells) {
  Grid g;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (cells[c]) g.set_given(c, cells[c]);
  }
  return g;
}

std::array<int, kCells> minimal_puzzle(std::array<int, kCells> cells, std::mt19937_64& rng) {
  std::array<int, kCells> order{};
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int c : order) {
    const int keep = cells[c];
    cells[c] = 0;
    if (oracle::count_solutions(to_grid(cells), 2) != 1) cells[c] = keep;
  }
  return cells;
}

// Candidate-mask rater.
class Rater {
 public:
  explicit Rater(const std::array<int, kCells>& cells) {
    cand_.fill(kAll);
    for (CellIndex c = 0; c < kCells; ++c) {
      if (cells[c]) assign(c, cells[c]);
    }
  }

  // 0 = easy, 1 = medium, 2 = hard
  int rate() {
    bool advanced = false;
    while (!solved()) {
      if (singles()) continue;
      if (locked() || subsets()) {
        advanced = true;
        continue;
      }
      return 2;
    }
    return advanced ? 1 : 0;
  }

 private:
  void assign(CellIndex c, int d) {
    value_[c] = d;
    cand_[c] = 0;
    for (CellIndex p : peers_of(c)) cand_[p] &= static_cast<Mask>(~(1u << d));
  }
  bool solved() const {
    return std::all_of(value_.begin(), value_.end(), [](int v) { return v != 0; });
  }
  bool singles() {
    for (CellIndex c = 0; c < kCells; ++c) {
      if (!value_[c] && std::popcount(cand_[c]) == 1) {
        assign(c, std::countr_zero(cand_[c]));
        return true;
      }
    }
    for (int s = 0; s < kStructures; ++s) {
      const auto& unit = cells_of_structure(StructureId::from_index(s));
      for (int d = 1; d <= 9; ++d) {
        int count = 0, where = -1;
        for (CellIndex c : unit) {
          if (cand_[c] & (1u << d)) {
            ++count;
            where = c;
          }
        }
        if (count == 1) {
          assign(where, d);
          return true;
        }
      }
    }
    return false;
  }
  bool eliminate(CellIndex c, Mask m) {
    if (value_[c] || !(cand_[c] & m)) return false;
    cand_[c] &= static_cast<Mask>(~m);
    return true;
  }
  // Pointing and claiming: a digit confined to one box-line intersection.
  bool locked() {
    bool changed = false;
    for (int a = 0; a < kStructures; ++a) {
      for (int b = 0; b < kStructures; ++b) {
        if (a == b) continue;
        const auto& ua = cells_of_structure(StructureId::from_index(a));
        const auto& ub = cells_of_structure(StructureId::from_index(b));
        for (int d = 1; d <= 9; ++d) {
          const Mask bit = static_cast<Mask>(1u << d);
          bool any = false, inside = true;
          for (CellIndex c : ua) {
            if (!(cand_[c] & bit)) continue;
            any = true;
            if (std::find(ub.begin(), ub.end(), c) == ub.end()) inside = false;
          }
          if (!any || !inside) continue;
          for (CellIndex c : ub) {
            if (std::find(ua.begin(), ua.end(), c) == ua.end()) changed |= eliminate(c, bit);
          }
        }
      }
    }
    return changed;
  }
  bool subsets() {
    bool changed = false;
    for (int s = 0; s < kStructures; ++s) {
      const auto& unit = cells_of_structure(StructureId::from_index(s));
      for (int size = 2; size <= 3; ++size) {
        // naked: `size` cells whose union has `size` digits
        for (int m = 1; m < (1 << 9); ++m) {
          if (std::popcount(static_cast<unsigned>(m)) != size) continue;
          Mask uni = 0;
          bool ok = true;
          for (int k = 0; k < 9; ++k) {
            if (!(m & (1 << k))) continue;
            if (value_[unit[k]]) ok = false;
            uni |= cand_[unit[k]];
          }
          if (ok && std::popcount(uni) == size) {
            for (int k = 0; k < 9; ++k) {
              if (!(m & (1 << k))) changed |= eliminate(unit[k], uni);
            }
          }
        }
        // hidden: `size` digits confined to `size` cells
        for (int dm = 1; dm < (1 << 9); ++dm) {
          if (std::popcount(static_cast<unsigned>(dm)) != size) continue;
          const Mask digits = static_cast<Mask>(dm << 1);
          int where = 0;
          bool present = true;
          for (int d = 1; d <= 9; ++d) {
            if (!(digits & (1u << d))) continue;
            int pos = 0;
            for (int k = 0; k < 9; ++k) {
              if (cand_[unit[k]] & (1u << d)) pos |= 1 << k;
            }
            if (!pos) present = false;
            where |= pos;
          }
          if (present && std::popcount(static_cast<unsigned>(where)) == size) {
            for (int k = 0; k < 9; ++k) {
              if (where & (1 << k)) changed |= eliminate(unit[k], static_cast<Mask>(kAll & ~digits));
            }
          }
        }
      }
    }
    return changed;
  }

  std::array<int, kCells> value_{};
  std::array<Mask, kCells> cand_{};
};

std::string text(const std::array<int, kCells>& cells) {
  std::string s(kCells, '.');
  for (CellIndex c = 0; c < kCells; ++c) {
    if (cells[c]) s[c] = static_cast<char>('0' + cells[c]);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate a deterministic sudoku corpus"};
  std::string kind = "hard";
  int count = 100;
  std::uint64_t seed = 1;
  app.add_option("kind", kind, "easy | medium | hard | sixteen")
      ->check(CLI::IsMember({"easy", "medium", "hard", "sixteen"}));
  app.add_option("--count", count, "number of puzzles");
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  const int wanted = kind == "easy" ? 0 : kind == "medium" ? 1 : 2;
  std::cout << "# " << kind << " corpus: " << count << " puzzles, seed " << seed << "\n";
  int emitted = 0;
  long tried = 0;
  while (emitted < count) {
    const auto solution = random_solution(rng);
    if (kind == "sixteen") {
      std::array<int, kCells> order{};
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::array<int, kCells> cells{};
      for (int i = 0; i < 16; ++i) cells[order[i]] = solution[order[i]];
      std::cout << text(cells) << "\n";
      ++emitted;
      continue;
    }
    const auto puzzle = minimal_puzzle(solution, rng);
    ++tried;
    if (Rater(puzzle).rate() != wanted) continue;
    std::cout << text(puzzle) << "\n";
    ++emitted;
  }
  std::cerr << kind << ": " << emitted << " of " << tried << " generated puzzles kept\n";
  return 0;
}
