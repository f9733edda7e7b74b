#include "dcop/pseudotree.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

namespace dcop {

std::vector<VariableId> PseudoTree::ancestorsConstrained(VariableId v) const {
  std::vector<VariableId> ap = pseudoParents[static_cast<std::size_t>(v)];
  if (parent[static_cast<std::size_t>(v)] >= 0) ap.push_back(parent[static_cast<std::size_t>(v)]);
  std::sort(ap.begin(), ap.end());
  return ap;
}

bool PseudoTree::isAncestorOf(VariableId anc, VariableId v) const {
  VariableId u = parent[static_cast<std::size_t>(v)];
  while (u >= 0) {
    if (u == anc) return true;
    u = parent[static_cast<std::size_t>(u)];
  }
  return false;
}

namespace {

void finishRelations(PseudoTree& t, const Problem& p) {
  const auto n = static_cast<std::size_t>(p.n);
  t.pseudoParents.assign(n, {});
  t.pseudoChildren.assign(n, {});
  std::set<std::pair<VariableId, VariableId>> tree;
  for (VariableId v = 0; v < p.n; ++v) {
    VariableId pa = t.parent[static_cast<std::size_t>(v)];
    if (pa >= 0) tree.insert(std::minmax(pa, v));
  }
  for (const auto& c : p.constraints) {
    if (tree.count(std::minmax(c.i, c.j))) continue;
    VariableId lo, hi;  // hi = descendant
    if (t.isAncestorOf(c.i, c.j)) {
      lo = c.i;
      hi = c.j;
    } else if (t.isAncestorOf(c.j, c.i)) {
      lo = c.j;
      hi = c.i;
    } else {
      throw std::logic_error("non-tree constraint does not connect to an ancestor");
    }
    t.pseudoParents[static_cast<std::size_t>(hi)].push_back(lo);
    t.pseudoChildren[static_cast<std::size_t>(lo)].push_back(hi);
  }
  for (auto& v : t.pseudoParents) std::sort(v.begin(), v.end());
  for (auto& v : t.pseudoChildren) std::sort(v.begin(), v.end());
  t.depth.assign(n, 0);
  // children vectors are in construction order; depths via preorder walk.
  std::vector<VariableId> stack{t.root};
  while (!stack.empty()) {
    VariableId u = stack.back();
    stack.pop_back();
    for (VariableId c : t.children[static_cast<std::size_t>(u)]) {
      t.depth[static_cast<std::size_t>(c)] = t.depth[static_cast<std::size_t>(u)] + 1;
      stack.push_back(c);
    }
  }
  computeSeparators(t);
}

}  // namespace

void computeSeparators(PseudoTree& t) {
  const auto n = static_cast<std::size_t>(t.size());
  t.sep.assign(n, {});
  // Post-order: deepest first.
  std::vector<VariableId> order(t.size());
  for (int i = 0; i < t.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](VariableId a, VariableId b) {
    return t.depth[static_cast<std::size_t>(a)] > t.depth[static_cast<std::size_t>(b)];
  });
  for (VariableId v : order) {
    std::set<VariableId> s;
    for (VariableId a : t.ancestorsConstrained(v)) s.insert(a);
    for (VariableId c : t.children[static_cast<std::size_t>(v)])
      for (VariableId a : t.sep[static_cast<std::size_t>(c)]) s.insert(a);
    s.erase(v);
    t.sep[static_cast<std::size_t>(v)].assign(s.begin(), s.end());
  }
}

PseudoTree buildPseudoTree(const Problem& p) {
  auto errors = validate(p);
  if (!errors.empty()) throw std::invalid_argument("invalid problem: " + errors.front());
  auto adj = p.adjacency();
  std::vector<int> degree(static_cast<std::size_t>(p.n));
  for (int v = 0; v < p.n; ++v) degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());

  VariableId root = 0;
  for (VariableId v = 1; v < p.n; ++v)
    if (degree[static_cast<std::size_t>(v)] > degree[static_cast<std::size_t>(root)]) root = v;

  PseudoTree t;
  t.root = root;
  t.parent.assign(static_cast<std::size_t>(p.n), -1);
  t.children.assign(static_cast<std::size_t>(p.n), {});
  std::vector<char> visited(static_cast<std::size_t>(p.n), 0);
  // Neighbor visit order: descending degree, ties ascending id.
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end(), [&](VariableId a, VariableId b) {
      if (degree[static_cast<std::size_t>(a)] != degree[static_cast<std::size_t>(b)])
        return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
      return a < b;
    });
  }
  // Iterative DFS preserving recursive neighbor order.
  std::vector<std::pair<VariableId, std::size_t>> stack;
  visited[static_cast<std::size_t>(root)] = 1;
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    auto& [u, idx] = stack.back();
    if (idx >= adj[static_cast<std::size_t>(u)].size()) {
      stack.pop_back();
      continue;
    }
    VariableId w = adj[static_cast<std::size_t>(u)][idx++];
    if (visited[static_cast<std::size_t>(w)]) continue;
    visited[static_cast<std::size_t>(w)] = 1;
    t.parent[static_cast<std::size_t>(w)] = u;
    t.children[static_cast<std::size_t>(u)].push_back(w);
    stack.emplace_back(w, 0);
  }
  finishRelations(t, p);
  return t;
}

PseudoTree buildPseudoTreeFromEdges(const Problem& p, VariableId root,
                                    const std::vector<std::pair<VariableId, VariableId>>& treeEdges) {
  PseudoTree t;
  t.root = root;
  t.parent.assign(static_cast<std::size_t>(p.n), -1);
  t.children.assign(static_cast<std::size_t>(p.n), {});
  for (auto [pa, ch] : treeEdges) {
    t.parent[static_cast<std::size_t>(ch)] = pa;
    t.children[static_cast<std::size_t>(pa)].push_back(ch);
  }
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  finishRelations(t, p);
  return t;
}

int inducedWidth(const PseudoTree& t) {
  std::size_t w = 0;
  for (const auto& s : t.sep) w = std::max(w, s.size());
  return static_cast<int>(w);
}

void dumpPseudoTree(const PseudoTree& t, std::ostream& os) {
  for (VariableId v = 0; v < t.size(); ++v) {
    os << "node " << v << " parent ";
    if (t.parent[static_cast<std::size_t>(v)] < 0)
      os << "-";
    else
      os << t.parent[static_cast<std::size_t>(v)];
    os << " sep ";
    const auto& s = t.sep[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << " depth " << t.depth[static_cast<std::size_t>(v)] << "\n";
  }
}

}  // namespace dcop
