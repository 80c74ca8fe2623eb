#include <gtest/gtest.h>

#include <random>

#include "minuet/oracle.hpp"
#include "support.hpp"

using namespace minuet;
using namespace minuet::oracle;
using minuet::testing::kClassicPuzzle;
using minuet::testing::kSolvedGrid;

TEST(CountSolutions, SolvedGridHasOne) { EXPECT_EQ(count_solutions(parse_grid(kSolvedGrid)), 1); }

TEST(CountSolutions, InkedConflictHasNone) {
  Grid g;
  g.set_given(0, 3);
  g.set_given(80, 3);
  g.set_given(8, 3);
  EXPECT_EQ(count_solutions(g), 0);
}

TEST(CountSolutions, EmptyGridHitsCap) {
  EXPECT_EQ(count_solutions(Grid{}, 2), 2);
  EXPECT_EQ(count_solutions(Grid{}, 5), 5);
}

TEST(CountSolutions, RejectsNonPositiveCap) { EXPECT_THROW(count_solutions(Grid{}, 0), std::invalid_argument); }

TEST(CountSolutions, IgnoresPencilMarks) {
  Grid g = parse_grid(kClassicPuzzle);
  for (CellIndex c = 0; c < kCells; ++c) {
    if (!g.solved(c)) g.erase(c, CandidateSet::all());
  }
  EXPECT_EQ(count_solutions(g), 1);
}

TEST(CountSolutions, SearchOrderDoesNotChangeCounts) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const std::string sol = minuet::testing::random_solution(rng);
    const Grid g = parse_grid(minuet::testing::remove_cells(sol, 45 + static_cast<int>(rng() % 16), rng));
    for (long cap : {1L, 2L, 3L}) {
      EXPECT_EQ(count_solutions(g, cap, SearchOrder::MostConstrained), count_solutions(g, cap, SearchOrder::Naive));
    }
  }
}

TEST(BruteSolve, SolvedGridIsItself) {
  const Grid g = parse_grid(kSolvedGrid);
  EXPECT_EQ(brute_solve(g), g);
}

TEST(BruteSolve, OneMissingCell) {
  std::string text = kSolvedGrid;
  text[40] = '.';
  EXPECT_EQ(serialize_grid(brute_solve(parse_grid(text))), kSolvedGrid);
}

TEST(BruteSolve, ClassicPuzzle) {
  const Grid s = brute_solve(parse_grid(kClassicPuzzle));
  EXPECT_EQ(serialize_grid(s), kSolvedGrid);
  EXPECT_TRUE(check_consistency(s).ok());
  EXPECT_EQ(s.origin(0), Origin::Given);
  EXPECT_EQ(s.origin(2), Origin::Deduced);
}

TEST(BruteSolve, ThrowsWhenNotWellPosed) {
  try {
    brute_solve(Grid{});
    FAIL();
  } catch (const NotWellPosed& e) {
    EXPECT_EQ(e.solutions(), 2);
  }
  Grid g;
  g.set_given(0, 1);
  g.set_given(1, 1);
  EXPECT_THROW(brute_solve(g), NotWellPosed);
}

TEST(BruteSolve, CorpusSolutionsAreCompleteAndConsistent) {
  for (const auto& e : minuet::testing::gated_puzzles()) {
    const Grid s = brute_solve(e.grid);
    EXPECT_TRUE(s.complete());
    EXPECT_TRUE(check_consistency(s).ok());
    for (CellIndex c = 0; c < kCells; ++c) {
      if (e.grid.solved(c)) EXPECT_EQ(s.digit(c), e.grid.digit(c));
    }
  }
}

TEST(VerifyWellPosed, CorpusIsWellPosed) {
  for (const auto& e : minuet::testing::gated_puzzles()) {
    const WellPosedness v = verify_well_posed(e.grid);
    EXPECT_EQ(v.kind, WellPosedness::Kind::WellPosed) << e.text;
    EXPECT_TRUE(v.searched);
    ASSERT_TRUE(v.solution.has_value());
  }
}

TEST(VerifyWellPosed, SixteenGivensUseFastPath) {
  for (const auto& e : minuet::testing::corpus("sixteen.txt").puzzles) {
    ASSERT_EQ(e.grid.given_count(), 16);
    const WellPosedness v = verify_well_posed(e.grid);
    EXPECT_EQ(v.kind, WellPosedness::Kind::MultipleSolutions);
    EXPECT_FALSE(v.searched);
  }
}

TEST(VerifyWellPosed, ConflictIsNoSolution) {
  Grid g;
  g.set_given(0, 4);
  g.set_given(9, 4);
  const WellPosedness v = verify_well_posed(g);
  EXPECT_EQ(v.kind, WellPosedness::Kind::NoSolution);
  EXPECT_FALSE(v.searched);
}

TEST(VerifyWellPosed, FewCluesSkipSearchEvenIfUnsolvable) {
  // 9 in r2c9 leaves r1c9 without a digit, yet no two givens clash.
  const Grid g = parse_grid("12345678." "........9" + std::string(63, '.'));
  EXPECT_EQ(count_solutions(g), 0);
  const WellPosedness v = verify_well_posed(g);
  EXPECT_EQ(v.kind, WellPosedness::Kind::MultipleSolutions);
  EXPECT_FALSE(v.searched);
}

TEST(VerifyWellPosed, SeventeenGivensSearch) {
  // 17-clue puzzle.
  const Grid g = parse_grid("...8.1..........435............7.8........1...2..3....6......75..34........2..6..");
  const WellPosedness v = verify_well_posed(g);
  EXPECT_TRUE(v.searched);
  EXPECT_EQ(v.kind, WellPosedness::Kind::WellPosed);
}
