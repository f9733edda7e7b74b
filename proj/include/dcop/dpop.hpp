#pragma once

#include "dcop/runtime.hpp"

namespace dcop {

struct DpopOptions {
  int maxDims = 0;  // 0 = unlimited; runs abort with WidthExceeded above this
  RunOptions run;
};

/// Baseline DPOP: bottom-up UTIL elimination, top-down VALUE assignment.
SolveResult solveDpop(const Problem& p, const PseudoTree& tree, const DpopOptions& opts = {});

}  // namespace dcop
