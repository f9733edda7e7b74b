#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "dcop/bench.hpp"
#include "dcop/dpop.hpp"
#include "dcop/generator.hpp"
#include "dcop/mbdpop.hpp"

using namespace dcop;

namespace {

std::vector<VariableId> ids(std::initializer_list<int> paperIndices) {
  std::vector<VariableId> out;
  for (int i : paperIndices) out.push_back(i - 1);
  return out;
}

struct Fixture {
  Problem p = fig2Fixture();
  PseudoTree t;
  Fixture() { t = buildPseudoTreeFromEdges(p, 0, fig2TreeEdges()); }
};

Problem randomProblem(int n, double density, std::uint64_t seed) {
  GenConfig cfg;
  cfg.kind = GraphKind::Random;
  cfg.n = n;
  cfg.density = density;
  cfg.seed = seed;
  return genRandom(cfg);
}

}  // namespace

TEST_CASE("fixture k=2 has a single cluster rooted at a3") {
  Fixture f;
  auto clusters = detectClusters(f.t, 2);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].cr == 2);
  CHECK(clusters[0].members == ids({4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}));
  CHECK(clusters[0].clusterLeaves == ids({8, 11, 14}));
}

TEST_CASE("fixture k=6 has no clusters") {
  Fixture f;
  CHECK(detectClusters(f.t, 6).empty());
}

TEST_CASE("sandwiched low-width nodes join the enclosing cluster") {
  // a12 has |Sep| = 2 <= k yet sits between over-width nodes; it must be a
  // member, not a cluster root.
  Fixture f;
  auto clusters = detectClusters(f.t, 2);
  const auto& m = clusters[0].members;
  CHECK(std::find(m.begin(), m.end(), 11) != m.end());
}

TEST_CASE("highest heuristic reproduces the worked labeling") {
  Fixture f;
  auto clusters = detectClusters(f.t, 2);
  labelMbDpop(f.t, 2, CcHeuristic::Highest, clusters);
  CHECK(clusters[0].ccList.at(2) == ids({1, 2, 3, 4, 5, 9}));
}

TEST_CASE("lowest heuristic yields nine CC nodes on the fixture") {
  Fixture f;
  auto clusters = detectClusters(f.t, 2);
  labelMbDpop(f.t, 2, CcHeuristic::Lowest, clusters);
  CHECK(clusters[0].ccList.at(2).size() == 9);
}

TEST_CASE("after labeling every member is within the width bound") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Problem p = randomProblem(12, 0.4, seed);
    PseudoTree t = buildPseudoTree(p);
    for (int k = 1; k <= 3; ++k) {
      auto clusters = detectClusters(t, k);
      for (auto heuristic : {CcHeuristic::Highest, CcHeuristic::Lowest}) {
        labelMbDpop(t, k, heuristic, clusters);
        for (const auto& c : clusters) {
          for (VariableId m : c.members) {
            const auto& cc = c.ccList.at(m);
            int rem = 0;
            for (VariableId s : t.sep[static_cast<std::size_t>(m)])
              if (std::find(cc.begin(), cc.end(), s) == cc.end()) ++rem;
            CHECK(rem <= k);
          }
        }
      }
    }
  }
}

TEST_CASE("every cluster member receives d^|CClist| instantiations") {
  Fixture f;
  MbDpopOptions opts;
  opts.k = 2;
  SolveResult r = solveMbDpop(f.p, f.t, opts);
  REQUIRE(r.status == RunStatus::Ok);
  for (VariableId m : ids({4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14})) {
    const std::int64_t ins = r.metrics.received(m, MessageKind::Instantiation_);
    const std::int64_t fin = r.metrics.received(m, MessageKind::FinalContext);
    CHECK(ins == 729);  // 3^6
    CHECK(fin == 1);
  }
  CHECK(r.metrics.count(MessageKind::Instantiation_) == 729 * 11);
}

TEST_CASE("bounded tables never exceed k dimensions") {
  Fixture f;
  for (int k = 2; k <= 4; ++k) {
    MbDpopOptions opts;
    opts.k = k;
    std::int64_t checked = 0;
    opts.run.observer = [&](const MessageEvent& e) {
      if (e.msg.kind == MessageKind::BoundedUtil) {
        ++checked;
        CHECK(std::get<BoundedResult>(e.msg.payload).table.dimCount() <= k);
      }
      if (e.msg.kind == MessageKind::Util)
        CHECK(std::get<UtilityTable>(e.msg.payload).dimCount() <= k);
    };
    SolveResult r = solveMbDpop(f.p, f.t, opts);
    CHECK(r.status == RunStatus::Ok);
    CHECK(checked > 0);
  }
}

TEST_CASE("mb-dpop equals brute force on random instances") {
  int clustered = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 8 + static_cast<int>(seed % 5);
    Problem p = randomProblem(n, 0.35, seed);
    PseudoTree t = buildPseudoTree(p);
    if (!detectClusters(t, 2).empty()) ++clustered;
    auto [ba, bc] = bruteForce(p);
    for (int k : {2, 3}) {
      MbDpopOptions opts;
      opts.k = k;
      for (auto h : {CcHeuristic::Highest, CcHeuristic::Lowest}) {
        opts.heuristic = h;
        SolveResult r = solveMbDpop(p, t, opts);
        REQUIRE(r.status == RunStatus::Ok);
        CHECK(r.cost == bc);
        CHECK(totalCost(p, r.assignment) == r.cost);
        CHECK(r.reportedOptimum == bc);
      }
    }
  }
  CHECK(clustered > 10);  // the sweep actually exercises clusters
}

TEST_CASE("cluster-free problems produce dpop-identical message traffic") {
  Problem p = randomProblem(9, 0.25, 4);
  PseudoTree t = buildPseudoTree(p);
  const int width = inducedWidth(t);
  MbDpopOptions opts;
  opts.k = width;  // no cluster forms
  REQUIRE(detectClusters(t, width).empty());
  SolveResult mb = solveMbDpop(p, t, opts);
  SolveResult dp = solveDpop(p, t);
  CHECK(mb.cost == dp.cost);
  CHECK(mb.metrics.msgCount == dp.metrics.msgCount);
  CHECK(mb.metrics.networkLoad == dp.metrics.networkLoad);
}

TEST_CASE("value phase fixes CC variables to the winning instantiation") {
  Fixture f;
  MbDpopOptions opts;
  opts.k = 2;
  Instantiation finalSeen;
  opts.run.observer = [&](const MessageEvent& e) {
    if (e.msg.kind == MessageKind::FinalContext && e.msg.src == 2)
      finalSeen = std::get<Instantiation>(e.msg.payload);
  };
  SolveResult r = solveMbDpop(f.p, f.t, opts);
  REQUIRE(r.status == RunStatus::Ok);
  REQUIRE(finalSeen.entries.size() == 6);  // full CC list of the fixture
  for (const auto& [var, val] : finalSeen.entries) CHECK(r.assignment[var] == val);
}

TEST_CASE("mb-dpop cost is schedule independent") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Problem p = randomProblem(10, 0.35, seed);
    PseudoTree t = buildPseudoTree(p);
    MbDpopOptions fifo;
    fifo.k = 2;
    SolveResult a = solveMbDpop(p, t, fifo);
    MbDpopOptions rnd;
    rnd.k = 2;
    rnd.run.schedule = Schedule::Random;
    rnd.run.scheduleSeed = seed + 1000;
    SolveResult b = solveMbDpop(p, t, rnd);
    CHECK(a.cost == b.cost);
    CHECK(a.metrics.total() == b.metrics.total());
  }
}
