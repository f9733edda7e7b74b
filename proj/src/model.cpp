#include "dcop/model.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace dcop {

std::vector<std::vector<VariableId>> Problem::adjacency() const {
  std::vector<std::vector<VariableId>> adj(static_cast<std::size_t>(n));
  for (const auto& c : constraints) {
    adj[static_cast<std::size_t>(c.i)].push_back(c.j);
    adj[static_cast<std::size_t>(c.j)].push_back(c.i);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

bool Assignment::full() const {
  return std::all_of(values.begin(), values.end(), [](int v) { return v >= 0; });
}

std::vector<std::string> validate(const Problem& p) {
  std::vector<std::string> errors;
  if (p.n <= 0) {
    errors.push_back("agent count must be positive");
    return errors;
  }
  if (static_cast<int>(p.domainSizes.size()) != p.n) {
    errors.push_back("domain size list does not match agent count");
    return errors;
  }
  for (int v = 0; v < p.n; ++v) {
    if (p.domainSizes[static_cast<std::size_t>(v)] < 1)
      errors.push_back("variable " + std::to_string(v) + " has empty domain");
  }
  std::set<std::pair<VariableId, VariableId>> seen;
  for (const auto& c : p.constraints) {
    if (c.i < 0 || c.i >= p.n || c.j < 0 || c.j >= p.n) {
      errors.push_back("constraint index out of range");
      continue;
    }
    if (c.i == c.j) {
      errors.push_back("self-loop constraint on variable " + std::to_string(c.i));
      continue;
    }
    auto key = std::minmax(c.i, c.j);
    if (!seen.insert({key.first, key.second}).second)
      errors.push_back("duplicate constraint (" + std::to_string(c.i) + "," + std::to_string(c.j) + ")");
    if (c.i > c.j)
      errors.push_back("constraint (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                       ") violates i < j canonical order");
    const auto want = static_cast<std::size_t>(p.domain(c.i)) * static_cast<std::size_t>(p.domain(c.j));
    if (c.costs.size() != want) {
      errors.push_back("constraint (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                       ") has wrong table size");
      continue;
    }
    for (Cost v : c.costs) {
      if (v < 0) {
        errors.push_back("negative cost in constraint (" + std::to_string(c.i) + "," +
                         std::to_string(c.j) + ")");
        break;
      }
    }
  }
  // Connectivity over the constraint graph; a single agent is trivially connected.
  if (p.n > 1) {
    auto adj = p.adjacency();
    std::vector<char> vis(static_cast<std::size_t>(p.n), 0);
    std::queue<VariableId> q;
    q.push(0);
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      VariableId u = q.front();
      q.pop();
      for (VariableId w : adj[static_cast<std::size_t>(u)]) {
        if (!vis[static_cast<std::size_t>(w)]) {
          vis[static_cast<std::size_t>(w)] = 1;
          ++reached;
          q.push(w);
        }
      }
    }
    if (reached != p.n) errors.push_back("disconnected constraint graph");
  }
  return errors;
}

Cost totalCost(const Problem& p, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != p.n || !a.full())
    throw std::invalid_argument("totalCost requires a full assignment");
  Cost sum = 0;
  for (const auto& c : p.constraints) sum += c.at(a[c.i], a[c.j], p.domain(c.j));
  return sum;
}

const std::vector<std::pair<VariableId, VariableId>>& fig2TreeEdges() {
  // (parent, child), 0-based ids; a_k has id k-1.
  static const std::vector<std::pair<VariableId, VariableId>> edges = {
      {0, 1}, {1, 2}, {2, 3}, {2, 8},  {3, 4},  {4, 5},   {5, 6},
      {6, 7}, {8, 9}, {9, 10}, {9, 11}, {11, 12}, {12, 13},
  };
  return edges;
}

Problem fig2Fixture() {
  Problem p;
  p.n = 14;
  p.name = "fig2";
  p.domainSizes.assign(14, 3);
  std::vector<std::pair<VariableId, VariableId>> edges = fig2TreeEdges();
  // Back edges (descendant, ancestor).
  const std::vector<std::pair<VariableId, VariableId>> pseudo = {
      {7, 0}, {7, 1}, {7, 3}, {7, 4}, {7, 5}, {8, 0},
      {9, 1}, {10, 2}, {10, 8}, {13, 8}, {13, 9},
  };
  edges.insert(edges.end(), pseudo.begin(), pseudo.end());
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (auto [i, j] : edges) {
    CostTable t;
    t.i = i;
    t.j = j;
    t.costs.resize(9);
    for (auto& c : t.costs) c = static_cast<Cost>(rng() % 100);
    p.constraints.push_back(std::move(t));
  }
  return p;
}

}  // namespace dcop
