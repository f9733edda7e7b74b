#pragma once

#include "dcop/clusters.hpp"
#include "dcop/runtime.hpp"

namespace dcop {

struct MbDpopOptions {
  int k = 2;
  CcHeuristic heuristic = CcHeuristic::Highest;
  RunOptions run;
};

/// MB-DPOP: central cluster labeling, then iterative bounded UTIL propagation
/// where the cluster root enumerates every instantiation of its full CC list,
/// followed by a re-derivation pass and VALUE propagation.
SolveResult solveMbDpop(const Problem& p, const PseudoTree& tree, const MbDpopOptions& opts = {});

}  // namespace dcop
