#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "minuet/harness.hpp"
#include "support.hpp"

using namespace minuet;
using namespace minuet::harness;

namespace {

const char* kEscargot = "1....7.9..3..2...8..96..5....53..9...1..8...26....4...3......1..4......7..7...3..";

Corpus corpus_of(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in);
}

}  // namespace

TEST(ParseCorpus, ThreeValidLines) {
  const Corpus c = corpus_of(std::string(minuet::testing::kClassicPuzzle) + "\n" + kEscargot + "\n" +
                             minuet::testing::kSolvedGrid + "\n");
  ASSERT_EQ(c.puzzles.size(), 3u);
  EXPECT_TRUE(c.errors.empty());
  EXPECT_EQ(c.puzzles[1].line, 2);
}

TEST(ParseCorpus, BadLineIsReportedOthersKept) {
  const Corpus c = corpus_of("# header\n" + std::string(minuet::testing::kClassicPuzzle) + "\n" +
                             std::string(80, '.') + "\n\n" + kEscargot + "  # trailing note\n");
  ASSERT_EQ(c.puzzles.size(), 2u);
  ASSERT_EQ(c.errors.size(), 1u);
  EXPECT_EQ(c.errors[0].line, 3);
  EXPECT_EQ(c.puzzles[1].line, 5);
  EXPECT_EQ(c.puzzles[1].text, kEscargot);
}

TEST(LoadCorpus, CommentOnlyFileIsEmpty) {
  const std::string path = ::testing::TempDir() + "/comments_only.txt";
  std::ofstream(path) << "# nothing\n\n# here\n";
  EXPECT_THROW(load_corpus(path), EmptyCorpus);
  EXPECT_THROW(load_corpus(path + ".missing"), std::runtime_error);
}

TEST(LoadCorpus, ShippedCorporaParseCleanly) {
  for (const char* name : {"easy.txt", "medium.txt", "hard.txt", "sixteen.txt", "extreme.txt"}) {
    const Corpus c = minuet::testing::corpus(name);
    EXPECT_TRUE(c.errors.empty()) << name;
    EXPECT_FALSE(c.puzzles.empty()) << name;
  }
  EXPECT_GE(minuet::testing::corpus("hard.txt").puzzles.size(), 230u);
}

TEST(ConfidenceBound, KnownValues) {
  EXPECT_NEAR(confidence_upper_bound(1, 0, 0.90), 0.9, 1e-15);
  EXPECT_NEAR(confidence_upper_bound(230, 0, 0.90), 1.0 - std::pow(0.1, 1.0 / 230), 1e-15);
  EXPECT_LT(confidence_upper_bound(230, 0, 0.90), 0.01);
  EXPECT_GT(confidence_upper_bound(229, 0, 0.90), 0.01);
  EXPECT_NEAR(confidence_upper_bound(100, 0, 0.90), 0.02276, 5e-6);
}

TEST(ConfidenceBound, DefiningIdentityAndMonotone) {
  double previous = 1.0;
  for (long n = 1; n <= 2000; n += 7) {
    const double b = confidence_upper_bound(n, 0, 0.90);
    EXPECT_NEAR(std::pow(1.0 - b, static_cast<double>(n)), 0.1, 1e-12);
    EXPECT_LT(b, previous);
    previous = b;
  }
}

TEST(ConfidenceBound, Errors) {
  EXPECT_THROW(confidence_upper_bound(0, 0, 0.9), std::domain_error);
  EXPECT_THROW(confidence_upper_bound(10, 1, 0.9), std::invalid_argument);
  EXPECT_THROW(confidence_upper_bound(10, 0, 1.0), std::domain_error);
}

TEST(RenderTrace, EmptyTraceIsHeaderOnly) {
  EXPECT_EQ(render_trace({}, Verbosity::Full), "trace: 0 finds, 0 inked, 0 erasures\n");
  EXPECT_EQ(render_trace({}, Verbosity::Summary), "trace: 0 finds, 0 inked, 0 erasures\n");
}

TEST(RenderTrace, OneHiddenSingle) {
  Trace trace;
  Log{&trace, Step::Step3_1, Rule::HiddenSingle}.find(StructureId::row(2), {23}, CandidateSet::single(6));
  const std::string text = render_trace(trace, Verbosity::Full);
  EXPECT_NE(text.find("[3.1] hidden single 6 at r3c6 (row 3)"), std::string::npos) << text;
}

TEST(RenderTrace, UsesMethodVocabulary) {
  SolveOutcome out;
  for (const auto& e : minuet::testing::corpus("hard.txt").puzzles) {
    out = solve(e.grid);
    if (out.stats.minuets > 0) break;
  }
  ASSERT_GT(out.stats.minuets, 0);
  const std::string full = render_trace(out.trace, Verbosity::Full);
  for (const char* word : {"half double", "starter", "circle", "square", "ink "}) {
    EXPECT_NE(full.find(word), std::string::npos) << word;
  }
  const std::string summary = render_trace(out.trace, Verbosity::Summary);
  EXPECT_NE(summary.find("[4] starter:"), std::string::npos);
  EXPECT_LT(summary.size(), full.size());
}

TEST(CandidatesText, RoundTrips) {
  Grid g = parse_grid(minuet::testing::kClassicPuzzle);
  g.erase(2, CandidateSet::of({1, 3}));
  const auto back = parse_candidates_text(candidates_text(g));
  ASSERT_TRUE(back.has_value());
  for (CellIndex c = 0; c < kCells; ++c) EXPECT_EQ(back->retained(c), g.retained(c));
  EXPECT_FALSE(parse_candidates_text("1 2 3").has_value());
  EXPECT_FALSE(parse_candidates_text(candidates_text(g) + " 4").has_value());
}

TEST(Report, ValidatesAndRejectsTampering) {
  const SolveOutcome out = solve(parse_grid(kEscargot));
  ASSERT_EQ(out.kind, SolveOutcome::Kind::ConjectureFailure);
  const std::string report = format_report(out, 7);
  for (const char* key : {"line: 7", "reason: all-starters-stuck", "oracle: WellPosed", "residual: ", "starter: "}) {
    EXPECT_NE(report.find(key), std::string::npos) << key;
  }
  EXPECT_TRUE(validate_report(report).valid) << validate_report(report).why;

  // Erase the true digit of the first unsolved cell from the candidates block.
  const Grid solution = *out.verdict->solution;
  Grid bad = out.grid;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (bad.solved(c)) continue;
    bad.erase(c, CandidateSet::single(solution.digit(c)));
    break;
  }
  std::string tampered = report;
  const auto at = tampered.find("candidates: ");
  const auto end = tampered.find('\n', at);
  tampered.replace(at, end - at, "candidates: " + candidates_text(bad));
  const ReportCheck check = validate_report(tampered);
  EXPECT_FALSE(check.valid);
  EXPECT_NE(check.why.find("solution digit"), std::string::npos);

  std::string ill = report;
  ill.replace(ill.find("puzzle: ") + 8, 81, std::string(81, '.'));
  EXPECT_FALSE(validate_report(ill).valid);
}

TEST(Batch, EasyCorpus) {
  const BatchResult r = batch_solve(minuet::testing::corpus("easy.txt"), {});
  EXPECT_EQ(r.stats.puzzles, 100);
  EXPECT_EQ(r.stats.solved, 100);
  EXPECT_EQ(r.stats.failures, 0);
  EXPECT_EQ(r.stats.solved_by_step3, 100);
  for (int m : r.stats.minuet_counts) EXPECT_EQ(m, 0);
  ASSERT_TRUE(r.stats.bound.has_value());
}

TEST(Batch, SixteenCluePuzzleIsExcluded) {
  const auto sixteen = minuet::testing::corpus("sixteen.txt").puzzles.front().text;
  const Corpus c = corpus_of(std::string(minuet::testing::kClassicPuzzle) + "\n" + sixteen + "\n");
  const BatchResult r = batch_solve(c, {});
  EXPECT_EQ(r.stats.puzzles, 1);
  EXPECT_EQ(r.stats.ill_posed, 1);
  EXPECT_EQ(r.results[1].kind, SolveOutcome::Kind::IllPosed);
  EXPECT_EQ(r.results[1].verdict, oracle::WellPosedness::Kind::MultipleSolutions);
}

TEST(Batch, FailuresCarryValidReports) {
  const Corpus c = minuet::testing::corpus("extreme.txt");
  const BatchResult r = batch_solve(c, {});
  EXPECT_EQ(r.stats.solved + r.stats.failures, r.stats.puzzles);
  EXPECT_FALSE(r.stats.bound.has_value() && r.stats.failures > 0);
  for (const auto& p : r.results) {
    if (p.kind != SolveOutcome::Kind::ConjectureFailure) continue;
    EXPECT_TRUE(validate_report(p.report).valid) << p.puzzle;
  }
}

TEST(Batch, SabotagedCleanupIsCaught) {
  // Erase the true digit of some unsolved cell after Step 3.
  BatchConfig config;
  config.solve.after_cleanup = [](Grid& g) {
    const Grid solution = oracle::brute_solve(g);
    for (CellIndex c = 0; c < kCells; ++c) {
      if (g.solved(c) || g.candidates(c).size() < 2) continue;
      g.erase(c, CandidateSet::single(solution.digit(c)));
      return;
    }
  };
  const Corpus c = corpus_of(minuet::testing::corpus("hard.txt").puzzles.front().text + "\n");
  EXPECT_THROW(batch_solve(c, config), HarnessError);
}

TEST(Batch, DeterministicAcrossWorkerCounts) {
  const Corpus c = minuet::testing::corpus("medium.txt");
  BatchConfig one, four;
  four.jobs = 4;
  const BatchResult a = batch_solve(c, one);
  const BatchResult b = batch_solve(c, four);
  EXPECT_EQ(format_stats(a.stats, false), format_stats(b.stats, false));
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].line, b.results[i].line);
    EXPECT_EQ(a.results[i].minuets, b.results[i].minuets);
    EXPECT_EQ(a.results[i].report, b.results[i].report);
  }
}

TEST(Quantile, Interpolates) {
  EXPECT_DOUBLE_EQ(quantile({3, 1, 2}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({}, 0.5), 0.0);
}
