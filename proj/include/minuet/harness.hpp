#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "minuet/minuet.hpp"
#include "minuet/oracle.hpp"

// Corpus ingestion, batch conjecture hunting, failure reports, statistics and
// trace rendering.
namespace minuet::harness {

// ---------------------------------------------------------------- corpus

struct CorpusEntry {
  int line = 0;
  std::string text;
  Grid grid;
};

struct CorpusError {
  int line = 0;
  std::string message;
};

struct Corpus {
  std::vector<CorpusEntry> puzzles;
  std::vector<CorpusError> errors;
};

class EmptyCorpus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One puzzle per line; blank lines and lines starting with '#' are skipped,
// and anything after a '#' on a puzzle line is ignored.
inline Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    std::string text = raw.substr(0, raw.find('#'));
    text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }),
               text.end());
    if (text.empty()) continue;
    try {
      corpus.puzzles.push_back({line, text, parse_grid(text)});
    } catch (const GridError& e) {
      corpus.errors.push_back({line, e.what()});
    }
  }
  return corpus;
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path);
  Corpus corpus = parse_corpus(in);
  if (corpus.puzzles.empty() && corpus.errors.empty()) throw EmptyCorpus("corpus " + path + " has no puzzles");
  return corpus;
}

// ------------------------------------------------------------ statistics

// Largest failure rate p still giving P(no failures in n trials) >= 1 - level.
inline double confidence_upper_bound(long n, long failures, double level) {
  if (n <= 0) throw std::domain_error("confidence bound needs at least one trial");
  if (failures != 0) throw std::invalid_argument("confidence bound is only defined for zero failures");
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence level must lie in (0, 1)");
  return -std::expm1(std::log1p(-level) / static_cast<double>(n));
}

// ----------------------------------------------------------------- trace

enum class Verbosity { Summary, Full };

inline const char* step_label(Step s) {
  switch (s) {
    case Step::Step1_1: return "1.1";
    case Step::Step1_2: return "1.2";
    case Step::Step1_3: return "1.3";
    case Step::Step2: return "2";
    case Step::Step3_1: return "3.1";
    case Step::Step3_2: return "3.2";
    case Step::Step3_3: return "3.3";
    case Step::Step4: return "4";
    case Step::Step4a: return "4a";
    case Step::Step4b: return "4b";
    case Step::Commit: return "commit";
  }
  return "?";
}

inline const char* rule_label(Rule r) {
  switch (r) {
    case Rule::HiddenSingle: return "hidden single";
    case Rule::NakedSingle: return "naked single";
    case Rule::PassiveSingle: return "passive single";
    case Rule::HalfDouble: return "half double";
    case Rule::HalfDoubleBlock: return "half double blocking";
    case Rule::HiddenDouble: return "hidden double";
    case Rule::NakedDouble: return "naked double";
    case Rule::HiddenTriple: return "hidden triple";
    case Rule::NakedTriple: return "naked triple";
    case Rule::CandidateFill: return "candidate fill";
    case Rule::Starter: return "starter";
    case Rule::ViewContradicted: return "conflict";
    case Rule::Stuck: return "stuck";
    case Rule::UnmarkedCandidates: return "trick (a) unmarked candidates";
    case Rule::JointSingle: return "trick (a) circle and square agree";
    case Rule::DoubleBlocking: return "trick (b) double-blocked candidate";
    case Rule::RetainedSolution: return "retained solution";
  }
  return "?";
}

namespace detail {

inline std::string cells_text(const TraceEvent& e) {
  std::string out;
  for (int i = 0; i < e.cell_count; ++i) {
    if (e.cells[i] < 0) continue;
    if (!out.empty()) out += "/";
    out += cell_name(e.cells[i]);
  }
  return out;
}

inline std::string describe_find(const TraceEvent& e) {
  std::ostringstream os;
  os << "[" << step_label(e.step) << "] ";
  const std::string where = e.structure ? " (" + to_string(*e.structure) + ")" : "";
  switch (e.rule) {
    case Rule::HiddenSingle:
    case Rule::NakedSingle:
    case Rule::PassiveSingle:
      os << rule_label(e.rule) << " " << e.digits.first() << " at " << cells_text(e) << where;
      break;
    case Rule::HalfDouble:
      os << "half double " << e.digits.first() << " in " << cells_text(e) << where;
      break;
    case Rule::Starter:
      if (e.structure) {
        os << "starter half double " << e.digits.first() << ": circle " << cell_name(e.cells[0]) << ", square "
           << cell_name(e.cells[1]) << where;
      } else {
        const Digit d1 = e.digits.first();
        const Digit d2 = (e.digits - CandidateSet::single(d1)).first();
        os << "starter cell " << cell_name(e.cells[0]) << ": circle " << d1 << ", square " << d2;
      }
      break;
    case Rule::ViewContradicted:
      os << "hypothesis " << cell_name(e.cells[0]) << "=" << e.digits.first() << " leads to a conflict";
      break;
    case Rule::Stuck:
      os << "no further simplification; markings erased";
      break;
    case Rule::UnmarkedCandidates:
      os << rule_label(e.rule) << ": " << to_string(e.digits) << " at " << cells_text(e);
      break;
    case Rule::JointSingle:
      os << rule_label(e.rule) << ": " << e.digits.first() << " at " << cells_text(e);
      break;
    case Rule::DoubleBlocking:
      os << rule_label(e.rule) << ": " << e.digits.first() << " circled at " << cell_name(e.cells[0])
         << ", squared at " << cell_name(e.cells[1]) << ", erased at " << cell_name(e.cells[2]) << where;
      break;
    case Rule::RetainedSolution:
      os << "the other hypothesis is adopted";
      break;
    case Rule::CandidateFill:
      os << "every empty cell receives its unblocked digits";
      break;
    default:
      os << rule_label(e.rule) << " " << to_string(e.digits) << " in " << cells_text(e) << where;
      break;
  }
  return os.str();
}

}  // namespace detail

inline std::string render_trace(const Trace& trace, Verbosity verbosity) {
  std::ostringstream os;
  std::size_t finds = 0, inks = 0, erasures = 0;
  for (const TraceEvent& e : trace) {
    finds += e.action == Action::Find;
    inks += e.action == Action::Ink;
    erasures += e.action == Action::Erase;
  }
  os << "trace: " << finds << " finds, " << inks << " inked, " << erasures << " erasures\n";

  if (verbosity == Verbosity::Summary) {
    std::map<std::pair<Step, Rule>, int> counts;
    for (const TraceEvent& e : trace) {
      if (e.action == Action::Find) ++counts[{e.step, e.rule}];
    }
    for (const auto& [key, n] : counts) {
      os << "  [" << step_label(key.first) << "] " << rule_label(key.second) << ": " << n << "\n";
    }
    return os.str();
  }

  for (const TraceEvent& e : trace) {
    switch (e.action) {
      case Action::Find: os << detail::describe_find(e) << "\n"; break;
      case Action::Ink: os << "    ink " << e.digits.first() << " at " << cell_name(e.cell()) << "\n"; break;
      case Action::Erase: os << "    erase " << to_string(e.digits) << " from " << cell_name(e.cell()) << "\n"; break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- report

// Inked cells print as their digit, pencil cells as [digits].
inline std::string candidates_text(const Grid& g) {
  std::string out;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (c) out += ' ';
    if (g.solved(c)) {
      out += static_cast<char>('0' + g.digit(c));
    } else {
      out += '[';
      for (Digit d : g.candidates(c)) out += static_cast<char>('0' + d);
      out += ']';
    }
  }
  return out;
}

inline std::optional<Grid> parse_candidates_text(const std::string& text) {
  std::istringstream in(text);
  Grid g;
  std::string tok;
  CellIndex c = 0;
  while (in >> tok) {
    if (c >= kCells) return std::nullopt;
    if (tok.size() == 1 && tok[0] >= '1' && tok[0] <= '9') {
      g.ink(c, tok[0] - '0');
    } else if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') {
      CandidateSet keep;
      for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
        if (tok[i] < '1' || tok[i] > '9') return std::nullopt;
        keep.insert(tok[i] - '0');
      }
      g.erase(c, keep.complement());
    } else {
      return std::nullopt;
    }
    ++c;
  }
  if (c != kCells) return std::nullopt;
  return g;
}

inline std::string format_report(const SolveOutcome& out, int line) {
  std::ostringstream os;
  os << "# minuet conjecture-failure report\n";
  os << "line: " << line << "\n";
  os << "reason: " << to_string(out.reason) << "\n";
  os << "puzzle: " << serialize_grid(out.start) << "\n";
  os << "oracle: " << (out.verdict ? oracle::to_string(out.verdict->kind) : "unknown") << "\n";
  if (out.verdict && out.verdict->solution) os << "solution: " << serialize_grid(*out.verdict->solution) << "\n";
  os << "residual: " << serialize_grid(out.grid) << "\n";
  os << "candidates: " << candidates_text(out.grid) << "\n";
  os << "minuets: " << out.stats.minuets << "\n";
  os << "starters: " << out.starters_tried.size() << "\n";
  for (const Starter& s : out.starters_tried) os << "starter: " << to_string(s) << "\n";
  return os.str();
}

struct ReportCheck {
  bool valid = false;
  std::string why;
};

// Re-derives everything a report claims: the puzzle is well-posed, and the
// residual grid is still compatible with the unique solution.
inline ReportCheck validate_report(const std::string& text) {
  std::istringstream in(text);
  std::map<std::string, std::string> fields;
  std::string raw;
  while (std::getline(in, raw)) {
    if (raw.empty() || raw[0] == '#') continue;
    const auto colon = raw.find(':');
    if (colon == std::string::npos) continue;
    std::string value = raw.substr(colon + 1);
    value.erase(0, value.find_first_not_of(' '));
    fields.emplace(raw.substr(0, colon), value);
  }
  if (!fields.count("puzzle") || !fields.count("candidates")) return {false, "missing puzzle or candidates"};
  Grid puzzle;
  try {
    puzzle = parse_grid(fields["puzzle"]);
  } catch (const GridError& e) {
    return {false, std::string("bad puzzle: ") + e.what()};
  }
  const auto verdict = oracle::verify_well_posed(puzzle);
  if (!verdict.well_posed()) return {false, std::string("puzzle is ") + oracle::to_string(verdict.kind)};
  const auto residual = parse_candidates_text(fields["candidates"]);
  if (!residual) return {false, "bad candidates block"};
  const Grid& solution = *verdict.solution;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (puzzle.solved(c) && (!residual->solved(c) || residual->digit(c) != puzzle.digit(c))) {
      return {false, "residual drops the given at " + cell_name(c)};
    }
    if (!residual->retained(c).contains(solution.digit(c))) {
      return {false, "residual excludes the solution digit at " + cell_name(c)};
    }
  }
  if (residual->complete()) return {false, "residual grid is already solved"};
  return {true, ""};
}

// ----------------------------------------------------------------- batch

struct BatchConfig {
  SolveConfig solve;
  int jobs = 1;
  double level = 0.90;
};

struct PuzzleResult {
  int line = 0;
  std::string puzzle;
  SolveOutcome::Kind kind = SolveOutcome::Kind::IllPosed;
  oracle::WellPosedness::Kind verdict = oracle::WellPosedness::Kind::NoSolution;
  int minuets = 0;
  bool solved_by_step3 = false;
  double millis = 0.0;
  std::string report;  // conjecture failures only
};

struct BatchStats {
  int puzzles = 0;  // well-posed entries; ill-posed ones are excluded
  int solved = 0;
  int failures = 0;
  int ill_posed = 0;
  int solved_by_step3 = 0;
  std::vector<int> minuet_counts;  // per well-posed puzzle, corpus order
  double median_ms = 0, p90_ms = 0, max_ms = 0;
  double level = 0.90;
  std::optional<double> bound;
};

struct BatchResult {
  BatchStats stats;
  std::vector<PuzzleResult> results;  // corpus order
};

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

// Classifies, solves and oracle-checks one puzzle. Throws HarnessError when
// the solver disagrees with the oracle.
inline PuzzleResult run_one(const CorpusEntry& entry, const SolveConfig& base_config) {
  PuzzleResult r;
  r.line = entry.line;
  r.puzzle = entry.text;
  const auto verdict = oracle::verify_well_posed(entry.grid);
  r.verdict = verdict.kind;
  if (!verdict.well_posed()) {
    r.kind = SolveOutcome::Kind::IllPosed;
    return r;
  }
  SolveConfig config = base_config;
  config.verify_input = false;
  config.record_trace = false;
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome out = solve(entry.grid, config);
  out.verdict = verdict;
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.kind = out.kind;
  r.minuets = out.stats.minuets;
  r.solved_by_step3 = out.stats.solved_by_step3;

  const std::string where = "line " + std::to_string(entry.line) + " (" + entry.text + "): ";
  switch (out.kind) {
    case SolveOutcome::Kind::Solved:
      for (CellIndex c = 0; c < kCells; ++c) {
        if (out.grid.digit(c) != verdict.solution->digit(c)) {
          throw HarnessError(where + "solver answer " + serialize_grid(out.grid) + " differs from oracle " +
                             serialize_grid(*verdict.solution) + " at " + cell_name(c));
        }
      }
      break;
    case SolveOutcome::Kind::IllPosed:
      throw HarnessError(where + "solver reported an ill-posed puzzle the oracle solves uniquely: " + out.detail);
    case SolveOutcome::Kind::ConjectureFailure: {
      r.report = format_report(out, entry.line);
      const ReportCheck check = validate_report(r.report);
      if (!check.valid) throw HarnessError(where + "failure report does not validate: " + check.why);
      break;
    }
  }
  return r;
}

inline BatchResult batch_solve(const Corpus& corpus, const BatchConfig& config) {
  if (corpus.puzzles.empty()) throw EmptyCorpus("batch needs at least one puzzle");
  const std::size_t n = corpus.puzzles.size();
  BatchResult out;
  out.results.resize(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out.results[i] = run_one(corpus.puzzles[i], config.solve);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BatchStats& s = out.stats;
  s.level = config.level;
  std::vector<double> times;
  for (const PuzzleResult& r : out.results) {
    if (r.verdict != oracle::WellPosedness::Kind::WellPosed) {
      ++s.ill_posed;
      continue;
    }
    ++s.puzzles;
    s.solved += r.kind == SolveOutcome::Kind::Solved;
    s.failures += r.kind == SolveOutcome::Kind::ConjectureFailure;
    s.solved_by_step3 += r.solved_by_step3;
    s.minuet_counts.push_back(r.minuets);
    times.push_back(r.millis);
  }
  s.median_ms = quantile(times, 0.5);
  s.p90_ms = quantile(times, 0.9);
  s.max_ms = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
  if (s.failures == 0 && s.puzzles > 0) s.bound = confidence_upper_bound(s.puzzles, 0, s.level);
  return out;
}

// Deterministic summary; timings are appended only when asked for.
inline std::string format_stats(const BatchStats& s, bool with_timing) {
  std::ostringstream os;
  os << "puzzles (well-posed): " << s.puzzles << "\n";
  os << "solved: " << s.solved << "\n";
  os << "conjecture failures: " << s.failures << "\n";
  os << "ill-posed (excluded): " << s.ill_posed << "\n";
  os << "solved by step 3 alone: " << s.solved_by_step3 << "\n";
  if (!s.minuet_counts.empty()) {
    const int max_m = *std::max_element(s.minuet_counts.begin(), s.minuet_counts.end());
    long total = 0;
    for (int m : s.minuet_counts) total += m;
    std::map<int, int> hist;
    for (int m : s.minuet_counts) ++hist[m];
    os << "minuets per puzzle: total " << total << ", max " << max_m << ", histogram";
    for (const auto& [m, k] : hist) os << " " << m << ":" << k;
    os << "\n";
  }
  os.setf(std::ios::fixed);
  os.precision(5);
  if (s.bound) {
    os << "failure rate upper bound at " << s.level << " confidence: " << *s.bound << "\n";
  } else {
    os << "failure rate upper bound: not available with failures present\n";
  }
  if (with_timing) {
    os.precision(3);
    os << "time per puzzle (ms): median " << s.median_ms << ", p90 " << s.p90_ms << ", max " << s.max_ms << "\n";
  }
  return os.str();
}

}  // namespace minuet::harness
