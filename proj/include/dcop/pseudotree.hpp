#pragma once

#include <iosfwd>
#include <vector>

#include "dcop/model.hpp"

namespace dcop {

/// DFS pseudo tree over the constraint graph. Tree edges plus pseudo (back)
/// edges cover the constraint edges exactly; every pseudo edge connects a node
/// to one of its tree ancestors.
struct PseudoTree {
  VariableId root = 0;
  std::vector<VariableId> parent;                   // -1 for root
  std::vector<std::vector<VariableId>> children;    // DFS visit order
  std::vector<std::vector<VariableId>> pseudoParents;
  std::vector<std::vector<VariableId>> pseudoChildren;
  std::vector<std::vector<VariableId>> sep;         // sorted ascending
  std::vector<int> depth;

  int size() const { return static_cast<int>(parent.size()); }
  /// Parent plus pseudo parents, sorted ascending.
  std::vector<VariableId> ancestorsConstrained(VariableId v) const;
  bool isAncestorOf(VariableId anc, VariableId v) const;
};

/// Deterministic DFS construction: root = max-degree node (ties to lowest id),
/// neighbors visited in descending degree (ties ascending id).
PseudoTree buildPseudoTree(const Problem& p);

/// Builds the tree from a forced (parent, child) edge list; remaining
/// constraint edges become pseudo edges. Used by the built-in fixture so its
/// traces do not depend on the DFS heuristic.
PseudoTree buildPseudoTreeFromEdges(const Problem& p, VariableId root,
                                    const std::vector<std::pair<VariableId, VariableId>>& treeEdges);

/// Bottom-up separator recurrence; called by both builders, idempotent.
void computeSeparators(PseudoTree& t);

/// Max separator size over all nodes.
int inducedWidth(const PseudoTree& t);

/// One line per node: `node <id> parent <id|-> sep <id,...> depth <d>`.
void dumpPseudoTree(const PseudoTree& t, std::ostream& os);

}  // namespace dcop
