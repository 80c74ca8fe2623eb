#include <gtest/gtest.h>

#include <random>
#include <set>

#include "minuet/grid.hpp"
#include "support.hpp"

using namespace minuet;
using minuet::testing::kClassicPuzzle;
using minuet::testing::kSolvedGrid;

TEST(CandidateSet, BasicOperations) {
  CandidateSet s = CandidateSet::of({2, 5, 9});
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(1));
  s.remove(5);
  EXPECT_EQ(s, CandidateSet::of({2, 9}));
  EXPECT_EQ(s.first(), 2);
  EXPECT_EQ((s | CandidateSet::single(4)).size(), 3);
  EXPECT_EQ(s & CandidateSet::of({9, 1}), CandidateSet::single(9));
  EXPECT_EQ(CandidateSet::all() - s, s.complement());
  EXPECT_EQ(CandidateSet::all().size(), 9);
  EXPECT_TRUE(CandidateSet{}.empty());
  EXPECT_EQ(to_string(CandidateSet::of({1, 7})), "{1,7}");

  std::vector<Digit> listed(s.begin(), s.end());
  EXPECT_EQ(listed, (std::vector<Digit>{2, 9}));
}

TEST(Topology, StructureMembers) {
  const auto& row0 = cells_of_structure(StructureId::row(0));
  for (int i = 0; i < 9; ++i) EXPECT_EQ(row0[i], i);
  EXPECT_EQ(cells_of_structure(StructureId::box(8)),
            (std::array<CellIndex, 9>{60, 61, 62, 69, 70, 71, 78, 79, 80}));
  EXPECT_EQ(cells_of_structure(StructureId::col(4)),
            (std::array<CellIndex, 9>{4, 13, 22, 31, 40, 49, 58, 67, 76}));
}

TEST(Topology, EveryCellCoveredThreeTimes) {
  std::array<int, kCells> cover{};
  for (int s = 0; s < kStructures; ++s) {
    for (CellIndex c : cells_of_structure(StructureId::from_index(s))) ++cover[c];
  }
  for (int n : cover) EXPECT_EQ(n, 3);
}

TEST(Topology, PeersAreSymmetricAndTwenty) {
  for (CellIndex c = 0; c < kCells; ++c) {
    const auto& peers = peers_of(c);
    EXPECT_EQ(std::set<CellIndex>(peers.begin(), peers.end()).size(), 20u);
    for (CellIndex p : peers) {
      EXPECT_NE(p, c);
      EXPECT_TRUE(are_peers(p, c));
      const auto& back = peers_of(p);
      EXPECT_NE(std::find(back.begin(), back.end(), c), back.end());
    }
  }
}

TEST(Topology, NamesAreOneBased) {
  EXPECT_EQ(cell_name(0), "r1c1");
  EXPECT_EQ(cell_name(80), "r9c9");
  EXPECT_EQ(to_string(StructureId::col(2)), "column 3");
  EXPECT_EQ(box_of(40), 4);
}

TEST(ParseGrid, EmptyGridHasFullCandidates) {
  const Grid g = parse_grid(std::string(81, '.'));
  EXPECT_EQ(g.given_count(), 0);
  for (CellIndex c = 0; c < kCells; ++c) EXPECT_EQ(g.candidates(c), CandidateSet::all());
}

TEST(ParseGrid, ZeroAndWhitespaceAreAccepted) {
  std::string text(kClassicPuzzle);
  std::replace(text.begin(), text.end(), '.', '0');
  text.insert(9, "\n  ");
  EXPECT_EQ(parse_grid(text), parse_grid(kClassicPuzzle));
}

TEST(ParseGrid, Errors) {
  auto code = [](const std::string& text) {
    try {
      parse_grid(text);
    } catch (const GridError& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error for " << text;
    return GridErrorCode::AlreadySolved;
  };
  EXPECT_EQ(code(std::string(80, '.')), GridErrorCode::WrongLength);
  EXPECT_EQ(code(std::string(82, '.')), GridErrorCode::WrongLength);
  EXPECT_EQ(code("x" + std::string(80, '.')), GridErrorCode::BadChar);
  EXPECT_EQ(code("55" + std::string(79, '.')), GridErrorCode::InconsistentGivens);
}

TEST(SerializeGrid, RoundTrips) {
  EXPECT_EQ(serialize_grid(Grid{}), std::string(81, '.'));
  EXPECT_EQ(serialize_grid(parse_grid(kSolvedGrid)), kSolvedGrid);
  for (const auto& e : minuet::testing::gated_puzzles()) {
    EXPECT_EQ(serialize_grid(e.grid), e.text);
    EXPECT_EQ(parse_grid(serialize_grid(e.grid)), e.grid);
  }
}

TEST(PlaceInk, ErasesFromAllTwentyPeers) {
  Grid g;
  Trace trace;
  place_ink(g, 40, 7, Log{&trace});
  EXPECT_EQ(g.digit(40), 7);
  EXPECT_EQ(g.origin(40), Origin::Deduced);
  int erasures = 0;
  for (const auto& e : trace) erasures += e.action == Action::Erase;
  EXPECT_EQ(erasures, 20);
  for (CellIndex p : peers_of(40)) EXPECT_FALSE(g.candidates(p).contains(7));
  EXPECT_TRUE(g.candidates(0).contains(7));
}

TEST(PlaceInk, LeavesPeersWithoutTheDigitAlone) {
  Grid g;
  for (CellIndex p : peers_of(40)) g.erase(p, CandidateSet::single(7));
  const Grid before = g;
  Trace trace;
  place_ink(g, 40, 7, Log{&trace});
  EXPECT_EQ(trace.size(), 1u);
  for (CellIndex p : peers_of(40)) EXPECT_EQ(g.candidates(p), before.candidates(p));
}

TEST(PlaceInk, Errors) {
  Grid g;
  g.erase(3, CandidateSet::single(4));
  try {
    place_ink(g, 3, 4);
    FAIL();
  } catch (const GridError& e) {
    EXPECT_EQ(e.code(), GridErrorCode::NotACandidate);
  }
  place_ink(g, 3, 5);
  try {
    place_ink(g, 3, 5);
    FAIL();
  } catch (const GridError& e) {
    EXPECT_EQ(e.code(), GridErrorCode::AlreadySolved);
  }
}

TEST(PlaceInk, OracleDigitNeverEmptiesAPeer) {
  for (const auto& e : minuet::testing::corpus("hard.txt").puzzles) {
    const Grid solution = oracle::brute_solve(e.grid);
    Grid g = e.grid;
    for (CellIndex c = 0; c < kCells; ++c) {
      if (g.solved(c) || !g.candidates(c).contains(solution.digit(c))) continue;
      place_ink(g, c, solution.digit(c));
      for (CellIndex p : peers_of(c)) {
        if (!g.solved(p)) EXPECT_FALSE(g.candidates(p).empty());
      }
    }
  }
}

TEST(CellState, InkOrPencil) {
  Grid g = parse_grid(kClassicPuzzle);
  ASSERT_TRUE(std::holds_alternative<Ink>(g.state(0)));
  EXPECT_EQ(std::get<Ink>(g.state(0)).digit, 5);
  EXPECT_EQ(std::get<Ink>(g.state(0)).origin, Origin::Given);
  ASSERT_TRUE(std::holds_alternative<CandidateSet>(g.state(2)));
  EXPECT_EQ(g.retained(0), CandidateSet::single(5));
}

TEST(Consistency, SolvedGridIsOk) { EXPECT_TRUE(check_consistency(parse_grid(kSolvedGrid)).ok()); }

TEST(Consistency, ConflictInRow) {
  Grid g;
  g.set_given(27, 5);
  g.set_given(30, 5);
  const Consistency c = check_consistency(g);
  EXPECT_EQ(c.kind, Consistency::Kind::Conflict);
  EXPECT_EQ(c.structure, StructureId::row(3));
  EXPECT_EQ(c.digit, 5);
}

TEST(Consistency, StarvedColumn) {
  Grid g;
  for (CellIndex c : cells_of_structure(StructureId::col(6))) g.erase(c, CandidateSet::single(9));
  const Consistency c = check_consistency(g);
  EXPECT_EQ(c.kind, Consistency::Kind::Starved);
  EXPECT_EQ(c.structure, StructureId::col(6));
  EXPECT_EQ(c.digit, 9);
}

TEST(Consistency, EmptyCell) {
  Grid g = parse_grid(kSolvedGrid);
  Grid h;
  for (CellIndex c = 1; c < kCells; ++c) h.set_given(c, g.digit(c));
  h.erase(0, CandidateSet::all());
  // Cell 0 empty also starves its structures; structures are scanned first.
  EXPECT_EQ(check_consistency(h).kind, Consistency::Kind::Starved);
  Grid k;
  k.erase(10, CandidateSet::all());
  EXPECT_EQ(check_consistency(k).kind, Consistency::Kind::EmptyCell);
  EXPECT_EQ(check_consistency(k).cell, 10);
}

TEST(ClaimGroup, StripsCellsAndSharedStructures) {
  Grid g;
  // r1c1 and r1c2 share row 1 and box 1.
  const std::array<CellIndex, 2> pair{0, 1};
  EXPECT_TRUE(claim_group(g, pair, CandidateSet::of({2, 7}), {}));
  EXPECT_EQ(g.candidates(0), CandidateSet::of({2, 7}));
  for (CellIndex c : {2, 5, 8, 9, 10, 20}) {
    EXPECT_FALSE(g.candidates(c).contains(2)) << c;
    EXPECT_FALSE(g.candidates(c).contains(7)) << c;
  }
  EXPECT_TRUE(g.candidates(27).contains(2));
  EXPECT_FALSE(claim_group(g, pair, CandidateSet::of({2, 7}), {}));
}

TEST(Replay, ReproducesMutations) {
  const Grid start = parse_grid(kClassicPuzzle);
  Grid g = start;
  Trace trace;
  const Log log{&trace};
  place_ink(g, 2, 4, log);
  erase_logged(g, 3, CandidateSet::of({1, 2}), log);
  const std::array<CellIndex, 2> pair{10, 11};
  apply_group(g, StructureId::box(0), pair, CandidateSet::of({1, 2}), log);
  EXPECT_EQ(replay(start, trace), g);
  EXPECT_EQ(trace.front().action, Action::Ink);
}

TEST(Monotone, MutatorsNeverAddCandidates) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    Grid g;
    for (int step = 0; step < 40; ++step) {
      const Grid before = g;
      const CellIndex c = static_cast<CellIndex>(rng() % kCells);
      if (g.solved(c)) continue;
      const CandidateSet cand = g.candidates(c);
      if (cand.empty()) continue;
      if (rng() % 2) {
        auto it = cand.begin();
        for (int skip = static_cast<int>(rng() % cand.size()); skip; --skip) ++it;
        place_ink(g, c, *it);
      } else {
        g.erase(c, CandidateSet::from_bits(static_cast<std::uint16_t>(rng())));
      }
      for (CellIndex x = 0; x < kCells; ++x) {
        if (before.solved(x)) {
          EXPECT_EQ(g.digit(x), before.digit(x));
        } else {
          EXPECT_TRUE(g.retained(x).subset_of(before.candidates(x)));
        }
      }
    }
  }
}
