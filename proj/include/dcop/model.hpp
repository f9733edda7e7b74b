#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcop {

using VariableId = int;
using Cost = std::int64_t;

/// Binary cost table between variables i < j, row-major over (value of i,
/// value of j). Exactly one table per constrained pair.
struct CostTable {
  VariableId i = 0;
  VariableId j = 0;
  std::vector<Cost> costs;  // d_i * d_j entries

  Cost at(int vi, int vj, int dj) const { return costs[static_cast<std::size_t>(vi) * dj + vj]; }
};

struct Problem {
  int n = 0;
  std::vector<int> domainSizes;
  std::vector<CostTable> constraints;
  std::string name;

  int domain(VariableId v) const { return domainSizes[static_cast<std::size_t>(v)]; }
  std::vector<std::vector<VariableId>> adjacency() const;
};

/// Partial or full assignment; -1 marks an unassigned variable.
struct Assignment {
  std::vector<int> values;

  explicit Assignment(int n = 0) : values(static_cast<std::size_t>(n), -1) {}
  bool full() const;
  int& operator[](VariableId v) { return values[static_cast<std::size_t>(v)]; }
  int operator[](VariableId v) const { return values[static_cast<std::size_t>(v)]; }
};

/// Returns every invariant violation; empty result means the problem is valid.
std::vector<std::string> validate(const Problem& p);

/// Sum of all constraint costs under a full assignment.
Cost totalCost(const Problem& p, const Assignment& a);

/// The 14-agent example problem from the worked trace: 13 tree edges plus 11
/// back edges, all domains of size 3, costs drawn from a fixed seeded RNG.
Problem fig2Fixture();

/// Tree edges of the fixture as (parent, child) pairs, root a1 (id 0).
const std::vector<std::pair<VariableId, VariableId>>& fig2TreeEdges();

}  // namespace dcop
