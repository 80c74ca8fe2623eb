// Solve one puzzle and print the summary trace.
#include <iostream>

#include "minuet/harness.hpp"
#include "minuet/minuet.hpp"

int main(int argc, char** argv) {
  const std::string text = argc > 1 ? argv[1]
                                    : "4.....8.5.3..........7......2.....6.....8.4......1.......6.3.7.5..2.....1.4......";
  const minuet::SolveOutcome out = minuet::solve(minuet::parse_grid(text));
  std::cout << minuet::to_string(out.kind) << "\n" << minuet::serialize_grid(out.grid) << "\n";
  std::cout << minuet::harness::render_trace(out.trace, minuet::harness::Verbosity::Summary);
  return out.kind == minuet::SolveOutcome::Kind::Solved ? 0 : 1;
}
