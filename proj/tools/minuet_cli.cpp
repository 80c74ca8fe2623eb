// minuet: solve, verify and batch-test sudoku puzzles with the minuet method.
//
// Exit codes: 0 ok/solved, 1 usage or parse error, 2 conjecture failure,
// 3 ill-posed puzzle, 4 harness self-check failure (solver and oracle disagree).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "minuet/harness.hpp"
#include "minuet/minuet.hpp"
#include "minuet/oracle.hpp"

namespace {

using namespace minuet;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;
constexpr int kExitIllPosed = 3;
constexpr int kExitHarness = 4;

// An argument naming an existing file is read as a corpus; anything else is a
// puzzle string.
harness::Corpus puzzles_from(const std::string& arg) {
  if (fs::is_regular_file(arg)) return harness::load_corpus(arg);
  harness::Corpus corpus;
  corpus.puzzles.push_back({0, arg, parse_grid(arg)});
  return corpus;
}

std::string pretty(const Grid& g) {
  std::string out;
  for (int r = 0; r < 9; ++r) {
    if (r && r % 3 == 0) out += "------+-------+------\n";
    for (int c = 0; c < 9; ++c) {
      if (c && c % 3 == 0) out += "| ";
      const CellIndex i = 9 * r + c;
      out += g.solved(i) ? static_cast<char>('0' + g.digit(i)) : '.';
      out += c == 8 ? '\n' : ' ';
    }
  }
  return out;
}

void report_corpus_errors(const harness::Corpus& corpus) {
  for (const auto& e : corpus.errors) std::cerr << "line " << e.line << ": " << e.message << "\n";
}

struct SolveArgs {
  std::string puzzle;
  std::string trace = "none";
  int max_starters = 0;
  bool phase1_triples = false;
};

int run_solve(const SolveArgs& args) {
  const harness::Corpus corpus = puzzles_from(args.puzzle);
  report_corpus_errors(corpus);
  SolveConfig config;
  config.max_starters = args.max_starters;
  config.phase1_triples = args.phase1_triples;
  config.record_trace = args.trace != "none";

  int code = corpus.errors.empty() ? kExitOk : kExitUsage;
  bool failed = false, ill = false;
  for (const auto& entry : corpus.puzzles) {
    const SolveOutcome out = solve(entry.grid, config);
    if (entry.line) std::cout << "== line " << entry.line << "\n";
    std::cout << "status: " << to_string(out.kind) << "\n";
    switch (out.kind) {
      case SolveOutcome::Kind::Solved:
        std::cout << "solution: " << serialize_grid(out.grid) << "\n";
        std::cout << "minuets: " << out.stats.minuets << "\n" << pretty(out.grid);
        break;
      case SolveOutcome::Kind::ConjectureFailure:
        failed = true;
        std::cout << harness::format_report(out, entry.line);
        break;
      case SolveOutcome::Kind::IllPosed:
        ill = true;
        std::cout << "reason: " << out.detail << "\n";
        break;
    }
    if (config.record_trace) {
      std::cout << harness::render_trace(
          out.trace, args.trace == "full" ? harness::Verbosity::Full : harness::Verbosity::Summary);
    }
  }
  if (code != kExitOk) return code;
  if (failed) return kExitFailure;
  if (ill) return kExitIllPosed;
  return kExitOk;
}

int run_verify(const std::string& puzzle) {
  const auto verdict = oracle::verify_well_posed(parse_grid(puzzle));
  std::cout << oracle::to_string(verdict.kind) << "\n";
  return verdict.well_posed() ? kExitOk : kExitIllPosed;
}

int run_oracle(const std::string& puzzle) {
  const auto verdict = oracle::verify_well_posed(parse_grid(puzzle));
  if (!verdict.well_posed()) {
    std::cerr << oracle::to_string(verdict.kind) << "\n";
    return kExitIllPosed;
  }
  std::cout << serialize_grid(*verdict.solution) << "\n";
  return kExitOk;
}

struct BatchArgs {
  std::string corpus;
  std::string report_dir;
  int jobs = 1;
  double level = 0.90;
  bool timing = true;
  int max_starters = 0;
  bool phase1_triples = false;
};

int run_batch(const BatchArgs& args) {
  const harness::Corpus corpus = harness::load_corpus(args.corpus);
  report_corpus_errors(corpus);
  harness::BatchConfig config;
  config.jobs = args.jobs;
  config.level = args.level;
  config.solve.max_starters = args.max_starters;
  config.solve.phase1_triples = args.phase1_triples;

  harness::BatchResult result;
  try {
    result = harness::batch_solve(corpus, config);
  } catch (const harness::HarnessError& e) {
    std::cerr << "harness self-check failed: " << e.what() << "\n";
    return kExitHarness;
  }
  for (const auto& r : result.results) {
    if (r.kind == SolveOutcome::Kind::IllPosed) {
      std::cout << "line " << r.line << ": " << oracle::to_string(r.verdict) << ", excluded\n";
    }
  }
  if (!args.report_dir.empty()) {
    fs::create_directories(args.report_dir);
    for (const auto& r : result.results) {
      if (r.report.empty()) continue;
      const fs::path path = fs::path(args.report_dir) / ("failure_line" + std::to_string(r.line) + ".txt");
      std::ofstream(path) << r.report;
      std::cout << "report: " << path.string() << "\n";
    }
  }
  std::cout << harness::format_stats(result.stats, args.timing);
  return result.stats.failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minuet sudoku solver and conjecture harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the command-line flags");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve a puzzle (81-char string) or every puzzle in a file");
  solve_cmd->add_option("puzzle", solve_args.puzzle, "puzzle string or file")->required();
  solve_cmd->add_option("--trace", solve_args.trace, "trace verbosity")
      ->check(CLI::IsMember({"none", "summary", "full"}));
  solve_cmd->add_option("--max-starters", solve_args.max_starters, "starters tried per stall (0 = all)");
  solve_cmd->add_flag("--phase1-triples", solve_args.phase1_triples, "hunt hidden triples in Step 1");

  std::string puzzle;
  auto* verify_cmd = app.add_subcommand("verify", "classify a puzzle as WellPosed/NoSolution/MultipleSolutions");
  verify_cmd->add_option("puzzle", puzzle, "puzzle string")->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "print the brute-force solution");
  oracle_cmd->add_option("puzzle", puzzle, "puzzle string")->required();

  BatchArgs batch_args;
  auto* batch_cmd = app.add_subcommand("batch", "solve a corpus and report conjecture statistics");
  batch_cmd->add_option("corpus", batch_args.corpus, "corpus file")->required();
  batch_cmd->add_option("--report", batch_args.report_dir, "directory for failure reports");
  batch_cmd->add_option("--jobs", batch_args.jobs, "worker threads")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--level", batch_args.level, "confidence level")->check(CLI::Range(0.0, 1.0));
  batch_cmd->add_option("--max-starters", batch_args.max_starters, "starters tried per stall (0 = all)");
  batch_cmd->add_flag("--phase1-triples", batch_args.phase1_triples, "hunt hidden triples in Step 1");
  batch_cmd->add_flag("!--no-timing", batch_args.timing, "omit wall-clock timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*verify_cmd) return run_verify(puzzle);
    if (*oracle_cmd) return run_oracle(puzzle);
    if (*batch_cmd) return run_batch(batch_args);
  } catch (const GridError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
