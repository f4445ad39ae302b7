#pragma once

#include "diffmc/games.hpp"
#include "diffmc/graph.hpp"

// Independent game oracles for test cross-checks: plain recursion, no memo,
// no pruning, partial-isomorphism checked only when a play ends (rounds
// exhausted or Spoiler stuck). Kept apart from the production solvers on
// purpose.
namespace diffmc::testing {

Winner naive_ef(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                const std::vector<int>& b, int rounds);

Winner naive_diff(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                  int rounds, bool duplicator_restricted);

}  // namespace diffmc::testing
