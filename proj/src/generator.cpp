#include "dcop/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace dcop {

namespace {

// std::uniform_int_distribution is not portable across standard libraries;
// plain modulo keeps generated instances byte-identical everywhere.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

void fillCosts(Problem& p, std::vector<std::pair<VariableId, VariableId>> edges, int costMax,
               std::mt19937_64& rng) {
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  for (auto [i, j] : edges) {
    CostTable t;
    t.i = i;
    t.j = j;
    t.costs.resize(static_cast<std::size_t>(p.domain(i)) * p.domain(j));
    for (auto& c : t.costs) c = static_cast<Cost>(below(rng, static_cast<std::uint64_t>(costMax)));
    p.constraints.push_back(std::move(t));
  }
}

std::vector<std::pair<VariableId, VariableId>> randomSpanningTree(int n, std::mt19937_64& rng) {
  std::vector<VariableId> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[below(rng, i)]);
  std::vector<std::pair<VariableId, VariableId>> edges;
  for (std::size_t i = 1; i < perm.size(); ++i)
    edges.emplace_back(perm[below(rng, i)], perm[i]);
  return edges;
}

}  // namespace

Problem genRandom(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("gen: n must be positive");
  if (cfg.domainSize < 2) throw std::invalid_argument("gen: domain size must be at least 2");
  if (cfg.costMax < 1) throw std::invalid_argument("gen: costMax must be positive");
  if (cfg.density <= 0.0 || cfg.density > 1.0)
    throw std::invalid_argument("gen: density must be in (0,1]");
  const std::int64_t maxEdges = static_cast<std::int64_t>(cfg.n) * (cfg.n - 1) / 2;
  const auto edgeCount = static_cast<std::int64_t>(std::llround(cfg.density * static_cast<double>(maxEdges)));
  if (edgeCount < cfg.n - 1 || edgeCount > maxEdges)
    throw std::invalid_argument("gen: infeasible edge count for a connected graph");

  Problem p;
  p.n = cfg.n;
  p.name = "random-n" + std::to_string(cfg.n) + "-s" + std::to_string(cfg.seed);
  p.domainSizes.assign(static_cast<std::size_t>(cfg.n), cfg.domainSize);

  std::mt19937_64 rng(cfg.seed);
  auto edges = randomSpanningTree(cfg.n, rng);
  std::set<std::pair<VariableId, VariableId>> have;
  for (auto [a, b] : edges) have.insert(std::minmax(a, b));
  std::vector<std::pair<VariableId, VariableId>> rest;
  for (VariableId i = 0; i < cfg.n; ++i)
    for (VariableId j = i + 1; j < cfg.n; ++j)
      if (!have.count({i, j})) rest.emplace_back(i, j);
  const auto need = static_cast<std::size_t>(edgeCount) - edges.size();
  for (std::size_t i = 0; i < need; ++i) {
    std::size_t pick = i + below(rng, rest.size() - i);
    std::swap(rest[i], rest[pick]);
    edges.push_back(rest[i]);
  }
  fillCosts(p, std::move(edges), cfg.costMax, rng);
  return p;
}

Problem genScaleFree(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("gen: n must be positive");
  if (cfg.domainSize < 2) throw std::invalid_argument("gen: domain size must be at least 2");
  if (cfg.costMax < 1) throw std::invalid_argument("gen: costMax must be positive");
  if (cfg.m1 < 1 || cfg.m1 > cfg.m0 || cfg.m0 >= cfg.n)
    throw std::invalid_argument("gen: scale-free requires 1 <= m1 <= m0 < n");

  Problem p;
  p.n = cfg.n;
  p.name = "scalefree-n" + std::to_string(cfg.n) + "-s" + std::to_string(cfg.seed);
  p.domainSizes.assign(static_cast<std::size_t>(cfg.n), cfg.domainSize);

  std::mt19937_64 rng(cfg.seed);
  auto edges = randomSpanningTree(cfg.m0, rng);
  std::vector<int> degree(static_cast<std::size_t>(cfg.n), 0);
  std::vector<VariableId> bag;  // one entry per degree unit
  for (auto [a, b] : edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
    bag.push_back(a);
    bag.push_back(b);
  }
  for (VariableId v = cfg.m0; v < cfg.n; ++v) {
    std::set<VariableId> targets;
    while (static_cast<int>(targets.size()) < cfg.m1)
      targets.insert(bag[below(rng, bag.size())]);
    for (VariableId t : targets) edges.emplace_back(t, v);
    // Degrees update after the node has attached all its edges.
    for (VariableId t : targets) {
      bag.push_back(t);
      bag.push_back(v);
      ++degree[static_cast<std::size_t>(t)];
      ++degree[static_cast<std::size_t>(v)];
    }
  }
  fillCosts(p, std::move(edges), cfg.costMax, rng);
  return p;
}

Problem generate(const GenConfig& cfg) {
  return cfg.kind == GraphKind::Random ? genRandom(cfg) : genScaleFree(cfg);
}

}  // namespace dcop
