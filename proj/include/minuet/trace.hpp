#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "minuet/types.hpp"

namespace minuet {

enum class Step : std::uint8_t {
  Step1_1,  // hidden singles in boxes
  Step1_2,  // half doubles
  Step1_3,  // hidden doubles / triples from half doubles
  Step2,    // candidate fill
  Step3_1,  // singles
  Step3_2,  // doubles
  Step3_3,  // triples
  Step4,    // starter choice, view verdicts
  Step4a,   // unmarked-candidate elimination
  Step4b,   // double-blocked elimination
  Commit,
};

enum class Rule : std::uint8_t {
  HiddenSingle,
  NakedSingle,
  PassiveSingle,
  HalfDouble,
  HalfDoubleBlock,
  HiddenDouble,
  NakedDouble,
  HiddenTriple,
  NakedTriple,
  CandidateFill,
  Starter,
  ViewContradicted,
  Stuck,
  UnmarkedCandidates,
  JointSingle,
  DoubleBlocking,
  RetainedSolution,
};

// Find: a deduction was made (no grid change by itself).
// Ink / Erase: the grid mutations the deduction caused.
enum class Action : std::uint8_t { Find, Ink, Erase };

struct TraceEvent {
  Step step{};
  Rule rule{};
  Action action{};
  std::optional<StructureId> structure;
  std::array<CellIndex, 3> cells{-1, -1, -1};
  std::uint8_t cell_count = 0;
  CandidateSet digits;

  CellIndex cell() const { return cells[0]; }
};

using Trace = std::vector<TraceEvent>;

// Tagged sink passed through every mutating operation. A null trace
// records nothing, which is how hypothesis views run.
struct Log {
  Trace* trace = nullptr;
  Step step = Step::Step3_1;
  Rule rule = Rule::NakedSingle;

  Log with(Step s, Rule r) const { return {trace, s, r}; }
  bool enabled() const { return trace != nullptr; }

  void find(std::optional<StructureId> s, std::initializer_list<CellIndex> cs, CandidateSet digits) const {
    if (!trace) return;
    TraceEvent e{step, rule, Action::Find, s, {-1, -1, -1}, 0, digits};
    for (CellIndex c : cs) {
      if (e.cell_count < 3) e.cells[e.cell_count++] = c;
    }
    trace->push_back(e);
  }
  void ink(CellIndex c, Digit d) const {
    if (trace) trace->push_back({step, rule, Action::Ink, std::nullopt, {c, -1, -1}, 1, CandidateSet::single(d)});
  }
  void erase(CellIndex c, CandidateSet removed) const {
    if (trace) trace->push_back({step, rule, Action::Erase, std::nullopt, {c, -1, -1}, 1, removed});
  }
};

}  // namespace minuet
