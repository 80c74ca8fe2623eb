#pragma once

#include <algorithm>
#include <bitset>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minuet/cleanup.hpp"
#include "minuet/grid.hpp"
#include "minuet/oracle.hpp"
#include "minuet/phase1.hpp"

// Step 4, the minuet: a binary choice seeds two hypothesis views (circle and
// square) that are developed alone with Step 3, then combined to erase base
// candidates that neither view retains. A view that contradicts hands the
// puzzle to the other one.
namespace minuet {

struct Starter {
  enum class Kind { BivalueCell, HalfDouble };
  Kind kind = Kind::BivalueCell;
  // BivalueCell: cell a holds exactly {d1, d2}.
  // HalfDouble: digit d1 is confined to cells a and b of `structure`.
  CellIndex a = -1;
  CellIndex b = -1;
  Digit d1 = 0;
  Digit d2 = 0;
  StructureId structure{};
  int score = 0;

  struct Choice {
    CellIndex cell;
    Digit digit;
  };
  Choice circle() const { return {a, d1}; }
  Choice square() const { return kind == Kind::BivalueCell ? Choice{a, d2} : Choice{b, d1}; }

  friend bool operator==(const Starter&, const Starter&) = default;
};

inline std::string to_string(const Starter& s) {
  if (s.kind == Starter::Kind::BivalueCell) {
    return "cell " + cell_name(s.a) + " " + to_string(CandidateSet::of({s.d1, s.d2})) + " score " +
           std::to_string(s.score);
  }
  return "half double " + std::to_string(s.d1) + " in " + cell_name(s.a) + "/" + cell_name(s.b) + " (" +
         to_string(s.structure) + ") score " + std::to_string(s.score);
}

enum class ViewLabel { Circle, Square };

inline const char* to_string(ViewLabel l) { return l == ViewLabel::Circle ? "circle" : "square"; }

// One hypothesis. Its shadow grid only ever narrows the base: ink in the
// shadow is the view's enclosed single, pencil is its retained (dotted) set.
struct HypothesisView {
  ViewLabel label = ViewLabel::Circle;
  Grid shadow;
  std::optional<Consistency> contradiction;

  bool alive() const { return !contradiction.has_value(); }
  bool complete() const { return alive() && shadow.complete(); }
};

struct MinuetState {
  Starter starter;
  HypothesisView circle;
  HypothesisView square;
  int rounds = 0;
};

// Starters: every bivalue cell and every half double of the 27 structures,
// scored by the bivalue cells found in the structures covering the starter's
// cells. Highest score first; ties by lower first cell, then lower digit.
inline std::vector<Starter> enumerate_starters(const Grid& g) {
  std::bitset<kCells> bivalue;
  for (CellIndex c = 0; c < kCells; ++c) bivalue[c] = !g.solved(c) && g.candidates(c).size() == 2;

  auto score = [&](CellIndex a, CellIndex b) {
    std::bitset<kCells> seen;
    for (CellIndex c : {a, b}) {
      if (c < 0) continue;
      for (StructureId s : structures_of(c)) {
        for (CellIndex o : cells_of_structure(s)) seen[o] = true;
      }
    }
    seen[a] = false;
    if (b >= 0) seen[b] = false;
    return static_cast<int>((seen & bivalue).count());
  };

  std::vector<Starter> out;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (!bivalue[c]) continue;
    const CandidateSet cand = g.candidates(c);
    Starter s;
    s.kind = Starter::Kind::BivalueCell;
    s.a = c;
    s.d1 = cand.first();
    s.d2 = (cand - CandidateSet::single(s.d1)).first();
    s.structure = StructureId::box(box_of(c));
    s.score = score(c, -1);
    out.push_back(s);
  }
  for (int i = 0; i < kStructures; ++i) {
    const StructureId sid = StructureId::from_index(i);
    for (const auto& hd : cleanup::margin_half_doubles(g, sid)) {
      const bool dup = std::any_of(out.begin(), out.end(), [&](const Starter& s) {
        return s.kind == Starter::Kind::HalfDouble && s.d1 == hd.digit && s.a == hd.a && s.b == hd.b;
      });
      if (dup) continue;
      Starter s;
      s.kind = Starter::Kind::HalfDouble;
      s.a = hd.a;
      s.b = hd.b;
      s.d1 = hd.digit;
      s.structure = sid;
      s.score = score(hd.a, hd.b);
      out.push_back(s);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Starter& x, const Starter& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.a != y.a) return x.a < y.a;
    if (x.d1 != y.d1) return x.d1 < y.d1;
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.b < y.b;
  });
  return out;
}

namespace detail {

inline void develop(HypothesisView& v, cleanup::Options opts) {
  if (!v.alive()) return;
  const cleanup::Result r = cleanup::step3_fixpoint(v.shadow, {}, opts);
  if (!r.ok()) v.contradiction = r.status;
}

inline HypothesisView assert_choice(const Grid& base, ViewLabel label, Starter::Choice choice, cleanup::Options opts) {
  HypothesisView v{label, base, std::nullopt};
  if (v.shadow.solved(choice.cell) || !v.shadow.candidates(choice.cell).contains(choice.digit)) {
    v.contradiction = Consistency::empty_cell(choice.cell);
    return v;
  }
  place_ink(v.shadow, choice.cell, choice.digit);
  develop(v, opts);
  return v;
}

}  // namespace detail

// Circle asserts the starter's first choice, square the second; both are then
// developed with Step 3.
inline MinuetState init_hypotheses(const Grid& base, const Starter& starter, cleanup::Options opts = {}) {
  return {starter, detail::assert_choice(base, ViewLabel::Circle, starter.circle(), opts),
          detail::assert_choice(base, ViewLabel::Square, starter.square(), opts), 0};
}

// Narrows the view to the base, then develops it alone with Step 3.
inline void dance_alone(HypothesisView& v, const Grid& base, cleanup::Options opts = {}) {
  if (!v.alive()) return;
  Grid& sh = v.shadow;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (base.solved(c)) {
      const Digit d = base.digit(c);
      if (sh.solved(c)) {
        if (sh.digit(c) != d) {
          v.contradiction = Consistency::empty_cell(c);
          return;
        }
        continue;
      }
      if (!sh.candidates(c).contains(d)) {
        v.contradiction = Consistency::empty_cell(c);
        return;
      }
      place_ink(sh, c, d);
    } else if (sh.solved(c)) {
      if (!base.candidates(c).contains(sh.digit(c))) {
        v.contradiction = Consistency::empty_cell(c);
        return;
      }
    } else {
      sh.erase(c, base.candidates(c).complement());
      if (sh.candidates(c).empty()) {
        v.contradiction = Consistency::empty_cell(c);
        return;
      }
    }
  }
  detail::develop(v, opts);
}

struct DanceResult {
  bool changed = false;
  Consistency base_status;
};

// Joint eliminations on the base while both views are alive:
//  (a) a digit retained by neither view is erased; a digit both views ink in
//      the same cell is inked.
//  (b) if the circle inks n at A and the square inks n at B, n is erased from
//      the other cells of S1 ∩ S2 for every S1 ∋ A, S2 ∋ B (the whole
//      structure when S1 == S2).
// Then Step 3 on the base and both views re-synced.
inline DanceResult dance_together(MinuetState& st, Grid& base, const Log& log = {}, cleanup::Options opts = {}) {
  DanceResult r;
  const Grid& circle = st.circle.shadow;
  const Grid& square = st.square.shadow;

  const Log joint = log.with(Step::Step4a, Rule::JointSingle);
  const Log unmarked = log.with(Step::Step4a, Rule::UnmarkedCandidates);
  for (CellIndex c = 0; c < kCells; ++c) {
    if (base.solved(c)) continue;
    if (circle.solved(c) && square.solved(c) && circle.digit(c) == square.digit(c)) {
      const Digit d = circle.digit(c);
      joint.find(std::nullopt, {c}, CandidateSet::single(d));
      place_ink(base, c, d, joint);
      r.changed = true;
      continue;
    }
    const CandidateSet keep = circle.retained(c) | square.retained(c);
    const CandidateSet removed = base.candidates(c) - keep;
    if (removed.empty()) continue;
    unmarked.find(std::nullopt, {c}, removed);
    erase_logged(base, c, removed, unmarked);
    r.changed = true;
  }

  const Log blocking = log.with(Step::Step4b, Rule::DoubleBlocking);
  for (CellIndex a = 0; a < kCells; ++a) {
    if (!circle.solved(a) || base.solved(a)) continue;
    const Digit n = circle.digit(a);
    for (CellIndex b = 0; b < kCells; ++b) {
      if (b == a || !square.solved(b) || square.digit(b) != n || base.solved(b)) continue;
      for (StructureId s1 : structures_of(a)) {
        for (StructureId s2 : structures_of(b)) {
          for (CellIndex x : cells_of_structure(s1)) {
            if (x == a || x == b || !contains_cell(s2, x) || base.solved(x)) continue;
            if (!base.candidates(x).contains(n)) continue;
            blocking.find(s1 == s2 ? std::optional<StructureId>(s1) : std::nullopt, {a, b, x},
                          CandidateSet::single(n));
            erase_logged(base, x, CandidateSet::single(n), blocking);
            r.changed = true;
          }
        }
      }
    }
  }

  if (r.changed) {
    const cleanup::Result c = cleanup::step3_fixpoint(base, log, opts);
    r.base_status = c.status;
    if (!c.ok()) return r;
  }
  ++st.rounds;
  dance_alone(st.circle, base, opts);
  dance_alone(st.square, base, opts);
  return r;
}

// The view that survived replaces the base: its singles are inked and every
// cell keeps only what the view retains. Then Step 3 on the base.
inline Consistency commit_retained(const HypothesisView& survivor, Grid& base, const Log& log = {},
                                   cleanup::Options opts = {}) {
  const Log l = log.with(Step::Commit, Rule::RetainedSolution);
  l.find(std::nullopt, {}, {});
  const Grid& sh = survivor.shadow;
  for (CellIndex c = 0; c < kCells; ++c) {
    if (base.solved(c) || !sh.solved(c)) continue;
    if (!base.candidates(c).contains(sh.digit(c))) return Consistency::empty_cell(c);
    place_ink(base, c, sh.digit(c), l);
  }
  for (CellIndex c = 0; c < kCells; ++c) {
    if (base.solved(c)) continue;
    restrict_to(base, c, sh.candidates(c), l);
  }
  return cleanup::step3_fixpoint(base, log, opts).status;
}

enum class MinuetResult { Progress, SolvedOutright, Stuck, IllPosed };

inline const char* to_string(MinuetResult r) {
  switch (r) {
    case MinuetResult::Progress: return "progress";
    case MinuetResult::SolvedOutright: return "solved";
    case MinuetResult::Stuck: return "stuck";
    case MinuetResult::IllPosed: return "ill-posed";
  }
  return "?";
}

using DanceObserver = std::function<void(const MinuetState&, const Grid& base)>;

struct MinuetOptions {
  int round_cap = 81;
  cleanup::Options cleanup;
  DanceObserver observer;  // called after every dance_together
};

struct MinuetRun {
  MinuetResult result = MinuetResult::Stuck;
  int rounds = 0;
};

// One minuet from `starter`. Returns Stuck only with the base untouched.
inline MinuetRun run_minuet(Grid& base, const Starter& starter, const MinuetOptions& opts = {},
                            const Log& log = {}) {
  if (opts.round_cap <= 0) return {MinuetResult::Stuck, 0};
  log.with(Step::Step4, Rule::Starter)
      .find(starter.kind == Starter::Kind::HalfDouble ? std::optional<StructureId>(starter.structure) : std::nullopt,
            {starter.a, starter.b}, CandidateSet::from_bits(static_cast<std::uint16_t>((1u << starter.d1) | (1u << starter.d2))));

  MinuetState st = init_hypotheses(base, starter, opts.cleanup);
  bool changed = false;
  const auto commit = [&](const HypothesisView& survivor) -> MinuetRun {
    const Consistency c = commit_retained(survivor, base, log, opts.cleanup);
    if (!c.ok()) return {MinuetResult::IllPosed, st.rounds};
    return {base.complete() ? MinuetResult::SolvedOutright : MinuetResult::Progress, st.rounds};
  };

  for (int round = 0; round < opts.round_cap; ++round) {
    if (!st.circle.alive() && !st.square.alive()) return {MinuetResult::IllPosed, st.rounds};
    if (!st.circle.alive() || !st.square.alive()) {
      const HypothesisView& survivor = st.circle.alive() ? st.circle : st.square;
      const Starter::Choice lost = st.circle.alive() ? starter.square() : starter.circle();
      log.with(Step::Step4, Rule::ViewContradicted).find(std::nullopt, {lost.cell}, CandidateSet::single(lost.digit));
      return commit(survivor);
    }
    for (const HypothesisView* v : {&st.circle, &st.square}) {
      if (v->complete() && check_consistency(v->shadow).ok()) return commit(*v);
    }

    const DanceResult d = dance_together(st, base, log, opts.cleanup);
    if (!d.base_status.ok()) return {MinuetResult::IllPosed, st.rounds};
    if (opts.observer) opts.observer(st, base);
    if (base.complete()) return {MinuetResult::SolvedOutright, st.rounds};
    if (!d.changed) break;
    changed = true;
  }
  if (changed) return {MinuetResult::Progress, st.rounds};
  log.with(Step::Step4, Rule::Stuck).find(std::nullopt, {}, {});
  return {MinuetResult::Stuck, st.rounds};
}

struct SolveConfig {
  bool phase1_triples = false;
  // Starters tried per stall before giving up; 0 means all of them.
  int max_starters = 0;
  int round_cap = 81;
  cleanup::Options cleanup;
  // Classify the input with the oracle before solving.
  bool verify_input = true;
  bool record_trace = true;
  // Called after every dance_together.
  DanceObserver after_dance;
  // Fault-injection seam for harness self-tests: runs on the base grid after
  // the Phase II cleanup.
  std::function<void(Grid&)> after_cleanup;
};

struct SolveStats {
  int phase1_passes = 0;
  int minuets = 0;  // run_minuet invocations
  int commits = 0;
  int rounds = 0;
  int stalls = 0;   // starter enumerations
  bool solved_by_step3 = false;
};

enum class FailureReason { None, NoStarters, AllStartersStuck, StarterLimit };

inline const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::NoStarters: return "no-starters";
    case FailureReason::AllStartersStuck: return "all-starters-stuck";
    case FailureReason::StarterLimit: return "starter-limit";
  }
  return "?";
}

struct SolveOutcome {
  enum class Kind { Solved, ConjectureFailure, IllPosed };
  Kind kind = Kind::IllPosed;
  Grid start;
  Grid grid;  // solution, or the residual grid on failure
  SolveStats stats;
  Trace trace;
  FailureReason reason = FailureReason::None;
  std::vector<Starter> starters_tried;  // in the final stall
  std::optional<oracle::WellPosedness> verdict;
  std::string detail;

  bool solved() const { return kind == Kind::Solved; }
};

inline const char* to_string(SolveOutcome::Kind k) {
  switch (k) {
    case SolveOutcome::Kind::Solved: return "solved";
    case SolveOutcome::Kind::ConjectureFailure: return "conjecture-failure";
    case SolveOutcome::Kind::IllPosed: return "ill-posed";
  }
  return "?";
}

// Phase I, Step 3, then minuets from freshly enumerated starters until the
// grid is complete or every starter is stuck.
inline SolveOutcome solve(const Grid& puzzle, const SolveConfig& config = {}) {
  SolveOutcome out;
  out.start = puzzle;
  out.grid = puzzle;
  Grid& base = out.grid;
  const Log log{config.record_trace ? &out.trace : nullptr};

  auto ill_posed = [&](std::string why) {
    out.kind = SolveOutcome::Kind::IllPosed;
    out.detail = std::move(why);
    return out;
  };

  if (config.verify_input) {
    out.verdict = oracle::verify_well_posed(puzzle);
    if (!out.verdict->well_posed()) return ill_posed(oracle::to_string(out.verdict->kind));
  }

  phase1::HalfDoubleRegistry registry;
  const auto p1 = phase1::step1_fixpoint(base, registry, config.phase1_triples, log);
  out.stats.phase1_passes = p1.passes;
  if (!p1.ok()) return ill_posed("step 1: " + to_string(p1.status));
  const auto p2 = phase1::step2_fill(base, registry, log);
  if (!p2.ok()) return ill_posed("step 2: " + to_string(p2.status));

  const auto p3 = cleanup::step3_fixpoint(base, log, config.cleanup);
  if (!p3.ok()) return ill_posed("step 3: " + to_string(p3.status));
  if (config.after_cleanup) config.after_cleanup(base);
  out.stats.solved_by_step3 = base.complete();

  while (!base.complete()) {
    const std::vector<Starter> starters = enumerate_starters(base);
    ++out.stats.stalls;
    out.starters_tried.clear();
    if (starters.empty()) {
      out.reason = FailureReason::NoStarters;
      break;
    }
    bool progressed = false;
    for (const Starter& s : starters) {
      if (config.max_starters > 0 && static_cast<int>(out.starters_tried.size()) >= config.max_starters) {
        out.reason = FailureReason::StarterLimit;
        break;
      }
      out.starters_tried.push_back(s);
      ++out.stats.minuets;
      const MinuetRun run = run_minuet(base, s, {config.round_cap, config.cleanup, config.after_dance}, log);
      out.stats.rounds += run.rounds;
      const MinuetResult r = run.result;
      if (r == MinuetResult::IllPosed) return ill_posed("both hypotheses of " + to_string(s) + " contradicted");
      if (r == MinuetResult::Stuck) continue;
      ++out.stats.commits;
      progressed = true;
      break;
    }
    if (!progressed) {
      if (out.reason == FailureReason::None) out.reason = FailureReason::AllStartersStuck;
      break;
    }
  }

  if (base.complete()) {
    if (!check_consistency(base).ok()) return ill_posed("completed grid is inconsistent");
    out.kind = SolveOutcome::Kind::Solved;
    out.starters_tried.clear();
    return out;
  }
  if (!out.verdict) out.verdict = oracle::verify_well_posed(puzzle);
  if (!out.verdict->well_posed()) return ill_posed(oracle::to_string(out.verdict->kind));
  out.kind = SolveOutcome::Kind::ConjectureFailure;
  out.detail = to_string(out.reason);
  return out;
}

}  // namespace minuet
