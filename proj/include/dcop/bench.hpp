#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dcop/generator.hpp"
#include "dcop/rmbdpop.hpp"
#include "dcop/runtime.hpp"

namespace dcop {

/// Exhaustive minimum over all full assignments; ties broken lexicographically
/// by assignment. Guarded against instances with more than maxStates joint
/// assignments (default 1e7).
std::pair<Assignment, Cost> bruteForce(const Problem& p, std::int64_t maxStates = 10'000'000);

struct AlgoSpec {
  std::string name;  // dpop | mb-dpop | rmb-dpop
  int k = 2;
  CcHeuristic heuristic = CcHeuristic::Highest;
  RmbToggles toggles;
  int dpopMaxDims = 9;

  std::string label() const;
};

struct ExperimentConfig {
  GenConfig base;                 // kind/domain/costMax template
  std::vector<int> agentCounts;
  std::vector<double> densities;  // random sweeps
  std::vector<int> m1Values;      // scale-free sweeps
  std::vector<AlgoSpec> algorithms;
  int instances = 50;
  std::uint64_t seedBase = 1;
  double timeoutSec = 0.0;
};

struct ResultRow {
  std::string point;
  std::string algo;
  int k = 0;
  std::string toggles;
  std::uint64_t seed = 0;
  std::string status;  // ok | timeout | width-exceeded
  Cost cost = 0;
  Metrics metrics;
  bool summary = false;
  double medianTotal = 0.0;
};

/// Runs one algorithm spec on one problem (solve entry used by CLI and bench).
SolveResult runAlgo(const Problem& p, const PseudoTree& tree, const AlgoSpec& spec,
                    const RunOptions& run);

/// One row per (point, algorithm, instance), then summary rows with medians
/// per (point, algorithm). Timeouts are recorded, never abort the sweep.
std::vector<ResultRow> runExperiment(const ExperimentConfig& cfg);

void writeCsv(const std::vector<ResultRow>& rows, std::ostream& os);

/// Fraction of instances solved with status ok strictly within each limit.
std::vector<std::vector<double>> successRate(const std::vector<ResultRow>& rows,
                                             const std::vector<std::string>& algoLabels,
                                             const std::vector<double>& limitsMs);

ExperimentConfig parseExperimentConfig(std::istream& is);

}  // namespace dcop
