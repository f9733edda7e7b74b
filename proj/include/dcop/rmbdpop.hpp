#pragma once

#include <set>
#include <span>

#include "dcop/clusters.hpp"
#include "dcop/runtime.hpp"

namespace dcop {

struct RmbToggles {
  bool dem = true;    // off: the cluster root enumerates the full CC list
  bool ism = true;    // off: highest-heuristic central labeling
  bool cache = true;  // off: per-child reuse limited to branch independence
};

struct RmbDpopOptions {
  int k = 2;
  RmbToggles toggles;
  RunOptions run;
};

/// RMB-DPOP: iterative CC selection by effectiveness, distributed enumeration
/// of instantiations with branch-local augmentation, and cached child results.
/// With every mechanism off the run is message-identical to MB-DPOP(highest).
SolveResult solveRmbDpop(const Problem& p, const PseudoTree& tree, const RmbDpopOptions& opts = {});

/// Effectiveness bookkeeping used by the labeling protocol, exposed for tests.
/// Adds every count of src into dst, inserting absent keys at the back.
void mergeEff(EffMap& dst, const EffMap& src);

/// When active, bumps every candidate in rsep by one (inserting at 1).
void selfIncrement(EffMap& eff, std::span<const VariableId> rsep, bool active);

/// Keeps all accruing candidates and exactly one finalized candidate: max
/// count, ties to fewer tree children, then greater depth, then higher id.
void pruneCandidates(EffMap& eff, const std::set<VariableId>& accruing, const PseudoTree& t);

}  // namespace dcop
