#include "dcop/clusters.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dcop {

std::vector<ClusterInfo> detectClusters(const PseudoTree& t, int k) {
  if (k < 1) throw std::invalid_argument("dimension limit k must be at least 1");
  const int n = t.size();
  auto overWidth = [&](VariableId v) {
    return static_cast<int>(t.sep[static_cast<std::size_t>(v)].size()) > k;
  };

  // CR of an over-width node = parent of the topmost over-width node on its
  // ancestor-or-self chain. Regions sharing a CR form one cluster.
  std::map<VariableId, std::set<VariableId>> memberSets;  // cr -> members
  for (VariableId v = 0; v < n; ++v) {
    if (!overWidth(v)) continue;
    VariableId topmost = v;
    for (VariableId u = t.parent[static_cast<std::size_t>(v)]; u >= 0;
         u = t.parent[static_cast<std::size_t>(u)])
      if (overWidth(u)) topmost = u;
    VariableId cr = t.parent[static_cast<std::size_t>(topmost)];
    if (cr < 0) throw std::logic_error("over-width node with no valid cluster root");
    // Path from the CR (exclusive) down to v.
    for (VariableId u = v; u != cr; u = t.parent[static_cast<std::size_t>(u)])
      memberSets[cr].insert(u);
  }

  std::vector<ClusterInfo> out;
  for (auto& [cr, members] : memberSets) {
    ClusterInfo c;
    c.cr = cr;
    c.members.assign(members.begin(), members.end());
    for (VariableId m : c.members) {
      bool hasMemberChild = false;
      for (VariableId ch : t.children[static_cast<std::size_t>(m)])
        if (members.count(ch)) hasMemberChild = true;
      if (!hasMemberChild) c.clusterLeaves.push_back(m);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void labelMbDpop(const PseudoTree& t, int k, CcHeuristic h, std::vector<ClusterInfo>& clusters) {
  for (auto& cluster : clusters) {
    std::set<VariableId> members(cluster.members.begin(), cluster.members.end());
    // Bottom-up: deepest members first.
    std::vector<VariableId> order = cluster.members;
    std::sort(order.begin(), order.end(), [&](VariableId a, VariableId b) {
      return t.depth[static_cast<std::size_t>(a)] > t.depth[static_cast<std::size_t>(b)];
    });
    std::map<VariableId, std::set<VariableId>> lists;
    for (VariableId m : order) {
      std::set<VariableId> cc;
      for (VariableId ch : t.children[static_cast<std::size_t>(m)])
        if (members.count(ch)) cc.insert(lists[ch].begin(), lists[ch].end());
      const auto& sep = t.sep[static_cast<std::size_t>(m)];
      auto remaining = [&]() {
        std::vector<VariableId> r;
        for (VariableId s : sep)
          if (!cc.count(s)) r.push_back(s);
        return r;
      };
      for (auto rem = remaining(); static_cast<int>(rem.size()) > k; rem = remaining()) {
        VariableId pick = rem.front();
        for (VariableId cand : rem) {
          const int dc = t.depth[static_cast<std::size_t>(cand)];
          const int dp = t.depth[static_cast<std::size_t>(pick)];
          if (h == CcHeuristic::Highest) {
            if (dc < dp || (dc == dp && cand < pick)) pick = cand;
          } else {
            if (dc > dp || (dc == dp && cand > pick)) pick = cand;
          }
        }
        cc.insert(pick);
      }
      lists[m] = std::move(cc);
    }
    std::set<VariableId> crList;
    for (VariableId ch : t.children[static_cast<std::size_t>(cluster.cr)])
      if (members.count(ch)) crList.insert(lists[ch].begin(), lists[ch].end());
    cluster.ccList.clear();
    cluster.ccList[cluster.cr] = {crList.begin(), crList.end()};
    for (VariableId m : cluster.members) cluster.ccList[m] = {lists[m].begin(), lists[m].end()};
  }
}

}  // namespace dcop
