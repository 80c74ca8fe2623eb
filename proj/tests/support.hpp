#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "minuet/grid.hpp"
#include "minuet/harness.hpp"
#include "minuet/oracle.hpp"

namespace minuet::testing {

inline std::string corpus_path(const std::string& name) { return std::string(MINUET_CORPUS_DIR) + "/" + name; }

inline harness::Corpus corpus(const std::string& name) { return harness::load_corpus(corpus_path(name)); }

// easy + medium + hard: the puzzles every corpus-wide property runs over.
inline std::vector<harness::CorpusEntry> gated_puzzles() {
  std::vector<harness::CorpusEntry> out;
  for (const char* name : {"easy.txt", "medium.txt", "hard.txt"}) {
    auto c = corpus(name);
    out.insert(out.end(), c.puzzles.begin(), c.puzzles.end());
  }
  return out;
}

// Shuffled-digit DFS; an independent source of valid complete grids.
inline bool fill_random(std::array<int, kCells>& cells, int pos, std::mt19937_64& rng) {
  if (pos == kCells) return true;
  CandidateSet used;
  for (CellIndex p : peers_of(pos)) {
    if (cells[p]) used.insert(cells[p]);
  }
  std::array<int, 9> digits{1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::shuffle(digits.begin(), digits.end(), rng);
  for (int d : digits) {
    if (used.contains(d)) continue;
    cells[pos] = d;
    if (fill_random(cells, pos + 1, rng)) return true;
  }
  cells[pos] = 0;
  return false;
}

inline std::string random_solution(std::mt19937_64& rng) {
  std::array<int, kCells> cells{};
  fill_random(cells, 0, rng);
  std::string s(kCells, '0');
  for (CellIndex c = 0; c < kCells; ++c) s[c] = static_cast<char>('0' + cells[c]);
  return s;
}

// The solution with k random cells blanked.
inline std::string remove_cells(std::string solution, int k, std::mt19937_64& rng) {
  std::array<int, kCells> order{};
  for (int i = 0; i < kCells; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < k; ++i) solution[order[i]] = '.';
  return solution;
}

inline Digit truth_at(const std::string& solution, CellIndex c) { return solution[c] - '0'; }

// Cells where the grid disagrees with the known solution: a wrong ink, or an
// unsolved cell that lost its true digit.
inline int violations(const Grid& g, const std::string& solution) {
  int bad = 0;
  for (CellIndex c = 0; c < kCells; ++c) {
    const Digit t = truth_at(solution, c);
    if (g.solved(c) ? g.digit(c) != t : !g.candidates(c).contains(t)) ++bad;
  }
  return bad;
}

inline const char* kSolvedGrid =
    "534678912672195348198342567859761423426853791713924856961537284287419635345286179";
inline const char* kClassicPuzzle =
    "53..7....6..195....98....6.8...6...34..8.3..17...2...6.6....28....419..5....8..79";

}  // namespace minuet::testing
