#pragma once

#include <map>
#include <vector>

#include "dcop/pseudotree.hpp"

namespace dcop {

/// High-width region handled by memory-bounded iteration. The CR itself is not
/// listed in members; members form a connected subtree hanging off the CR.
struct ClusterInfo {
  VariableId cr = -1;
  std::vector<VariableId> members;        // sorted
  std::vector<VariableId> clusterLeaves;  // members with no member children
  /// CC lists per node (CR included). Central labeling fills these; under the
  /// iterative selection protocol they are produced by the run instead.
  std::map<VariableId, std::vector<VariableId>> ccList;
};

enum class CcHeuristic { Highest, Lowest };

/// Finds the high-width areas for dimension limit k. A node is over-width iff
/// |Sep| > k. Regions separated only by sandwiched low-width nodes merge: the
/// CR is the parent of the topmost over-width node on each ancestor chain.
std::vector<ClusterInfo> detectClusters(const PseudoTree& t, int k);

/// MB-DPOP labeling, computed centrally: bottom-up per member, CClist_i =
/// union of children's lists, then greedy picks from Sep(a_i)\CClist_i until
/// |Sep(a_i)\CClist_i| <= k. Highest picks the candidate closest to the root
/// (ties lowest id); lowest picks the deepest (ties highest id).
void labelMbDpop(const PseudoTree& t, int k, CcHeuristic h, std::vector<ClusterInfo>& clusters);

}  // namespace dcop
