// Acceptance suite: one pass/fail line per criterion, exercised end to end at
// the stated tolerances (exact integer equality unless noted).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcop/bench.hpp"
#include "dcop/dpop.hpp"
#include "dcop/io.hpp"
#include "dcop/mbdpop.hpp"
#include "dcop/rmbdpop.hpp"

using namespace dcop;

namespace {

bool reportCriterion(int number, const std::string& name, bool ok, const std::string& note = "") {
  std::printf("CRITERION %2d (%s): %s%s%s\n", number, name.c_str(), ok ? "PASS" : "FAIL",
              note.empty() ? "" : " — ", note.c_str());
  std::fflush(stdout);
  return ok;
}

std::vector<VariableId> ids(std::initializer_list<int> paperIndices) {
  std::vector<VariableId> out;
  for (int i : paperIndices) out.push_back(i - 1);
  return out;
}

Problem randomProblem(int n, double density, std::uint64_t seed) {
  GenConfig cfg;
  cfg.kind = GraphKind::Random;
  cfg.n = n;
  cfg.density = density;
  cfg.seed = seed;
  return genRandom(cfg);
}

RmbDpopOptions rmbOpts(int k, bool dem, bool ism, bool cache) {
  RmbDpopOptions o;
  o.k = k;
  o.toggles = {dem, ism, cache};
  return o;
}

struct Fixture {
  Problem p = fig2Fixture();
  PseudoTree t;
  Fixture() { t = buildPseudoTreeFromEdges(p, 0, fig2TreeEdges()); }
};

}  // namespace

TEST_CASE("criterion 1: optimality of every solver and toggle combination") {
  bool ok = true;
  int instances = 0;
  auto checkInstance = [&](const Problem& p) {
    ++instances;
    PseudoTree t = buildPseudoTree(p);
    auto [ba, bc] = bruteForce(p);
    SolveResult dp = solveDpop(p, t);
    ok = ok && dp.status == RunStatus::Ok && dp.cost == bc;
    for (int k : {2, 3}) {
      MbDpopOptions mb;
      mb.k = k;
      SolveResult rMb = solveMbDpop(p, t, mb);
      ok = ok && rMb.status == RunStatus::Ok && rMb.cost == bc;
      for (int mask = 0; mask < 8; ++mask) {
        SolveResult r = solveRmbDpop(p, t, rmbOpts(k, mask & 1, mask & 2, mask & 4));
        ok = ok && r.status == RunStatus::Ok && r.cost == bc;
      }
    }
  };
  const double densities[] = {0.2, 0.3, 0.5};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const double density = densities[seed % 3];
    // Density 0.2 needs n >= 10 to stay connected at the rounded edge count.
    const int n = density == 0.2 ? 10 + static_cast<int>(seed % 3) : 8 + static_cast<int>(seed % 5);
    checkInstance(randomProblem(n, density, seed));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig cfg;
    cfg.kind = GraphKind::ScaleFree;
    cfg.n = 8 + static_cast<int>(seed % 5);
    cfg.m0 = 4;
    cfg.m1 = 1 + static_cast<int>(seed % 2);
    cfg.seed = seed;
    checkInstance(genScaleFree(cfg));
  }
  ok = ok && instances == 70;
  CHECK(reportCriterion(1, "optimality vs brute force", ok));
}

TEST_CASE("criterion 2: first-round effectiveness trace") {
  Fixture f;
  std::map<std::pair<VariableId, VariableId>, std::multiset<std::pair<VariableId, int>>> round1;
  bool sawAllocation = false;
  RmbDpopOptions opts = rmbOpts(2, true, true, true);
  opts.run.observer = [&](const MessageEvent& e) {
    if (e.msg.kind == MessageKind::Allocation) sawAllocation = true;
    if (e.msg.kind == MessageKind::SepInfo && !sawAllocation) {
      const auto& eff = std::get<SepInfoPayload>(e.msg.payload).eff;
      round1[{e.msg.src, e.msg.dst}] = {eff.counts.begin(), eff.counts.end()};
    }
  };
  SolveResult r = solveRmbDpop(f.p, f.t, opts);

  auto expect = [](std::initializer_list<std::pair<int, int>> paperPairs) {
    std::multiset<std::pair<VariableId, int>> out;
    for (auto [idx, count] : paperPairs) out.insert({idx - 1, count});
    return out;
  };
  // Deviation documented in the decisions ledger: a12 is inactive (its width
  // equals k), so a9/a10 counts at and above a12 run one lower than Table 1.
  std::map<std::pair<int, int>, std::multiset<std::pair<VariableId, int>>> want;
  want[{8, 7}] = expect({{1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}});
  want[{14, 13}] = expect({{9, 1}, {10, 1}, {13, 1}});
  want[{11, 10}] = expect({{3, 1}, {9, 1}, {10, 1}});
  want[{7, 6}] = expect({{1, 2}, {2, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 1}});
  want[{13, 12}] = expect({{9, 2}, {10, 2}, {12, 1}, {13, 1}});
  want[{6, 5}] = expect({{1, 3}, {2, 3}, {4, 3}, {5, 3}, {6, 2}});
  want[{12, 10}] = expect({{9, 2}, {10, 2}, {13, 1}});
  want[{5, 4}] = expect({{1, 4}, {2, 4}, {4, 4}, {5, 3}});
  want[{10, 9}] = expect({{2, 1}, {3, 2}, {9, 4}, {10, 3}});
  want[{4, 3}] = expect({{1, 5}, {2, 5}, {3, 1}, {4, 4}});
  want[{9, 3}] = expect({{1, 1}, {2, 2}, {3, 3}, {9, 4}});

  bool ok = r.status == RunStatus::Ok && round1.size() == want.size();
  for (const auto& [edge, eff] : want) {
    auto it = round1.find({edge.first - 1, edge.second - 1});
    ok = ok && it != round1.end() && it->second == eff;
  }
  ok = ok && !r.selectionOrder.empty() && r.selectionOrder[0] == 1 && r.selectionCounts[0] == 7;
  CHECK(reportCriterion(2, "labeling round-1 golden trace", ok,
                        "a12 increments deviate from the published table by design"));
}

TEST_CASE("criterion 3: final CC lists") {
  Fixture f;
  SolveResult r = solveRmbDpop(f.p, f.t, rmbOpts(2, true, true, true));
  std::map<VariableId, std::vector<VariableId>> lists(r.ccLists.begin(), r.ccLists.end());
  bool ok = r.status == RunStatus::Ok && lists.size() == 12;
  ok = ok && lists[2] == ids({2, 9, 5, 6, 7});
  for (int i : {4, 5, 6, 7, 8}) ok = ok && lists[i - 1] == ids({2, 5, 6, 7});
  for (int i : {9, 10, 11, 12, 13, 14}) ok = ok && lists[i - 1] == ids({2, 9});
  CHECK(reportCriterion(3, "final CC lists golden trace", ok));
}

TEST_CASE("criterion 4: first-round instantiation trace") {
  Fixture f;
  std::vector<Message> instantiations;
  RmbDpopOptions opts = rmbOpts(2, true, true, true);
  opts.run.observer = [&](const MessageEvent& e) {
    if (e.msg.kind == MessageKind::Instantiation_ && instantiations.size() < 11)
      instantiations.push_back(e.msg);
  };
  SolveResult r = solveRmbDpop(f.p, f.t, opts);

  struct Row {
    int src, dst;
    std::vector<std::pair<int, int>> entries;
  };
  const std::vector<Row> table3 = {
      {3, 4, {{2, 0}}},
      {3, 9, {{2, 0}}},
      {4, 5, {{2, 0}}},
      {9, 10, {{2, 0}, {9, 0}}},
      {5, 6, {{2, 0}, {5, 0}}},
      {10, 11, {{2, 0}, {9, 0}}},
      {10, 12, {{2, 0}, {9, 0}}},
      {6, 7, {{2, 0}, {5, 0}, {6, 0}}},
      {12, 13, {{2, 0}, {9, 0}}},
      {7, 8, {{2, 0}, {5, 0}, {6, 0}, {7, 0}}},
      {13, 14, {{2, 0}, {9, 0}}},
  };
  bool ok = r.status == RunStatus::Ok && instantiations.size() == 11;
  for (std::size_t i = 0; ok && i < table3.size(); ++i) {
    const auto& msg = instantiations[i];
    const auto& want = table3[i];
    ok = msg.src == want.src - 1 && msg.dst == want.dst - 1;
    const auto& ins = std::get<Instantiation>(msg.payload);
    ok = ok && ins.entries.size() == want.entries.size();
    for (std::size_t e = 0; ok && e < want.entries.size(); ++e)
      ok = ins.entries[e].first == want.entries[e].first - 1 &&
           ins.entries[e].second == want.entries[e].second;
  }
  CHECK(reportCriterion(4, "instantiation round-1 golden trace", ok));
}

TEST_CASE("criterion 5: central labeling heuristics") {
  Fixture f;
  auto clusters = detectClusters(f.t, 2);
  bool ok = clusters.size() == 1 && clusters[0].cr == 2;
  labelMbDpop(f.t, 2, CcHeuristic::Highest, clusters);
  ok = ok && clusters[0].ccList.at(2) == ids({1, 2, 3, 4, 5, 9});
  auto lowest = detectClusters(f.t, 2);
  labelMbDpop(f.t, 2, CcHeuristic::Lowest, lowest);
  ok = ok && lowest[0].ccList.at(2).size() == 9;
  CHECK(reportCriterion(5, "highest/lowest heuristic labeling", ok));
}

TEST_CASE("criterion 6: instantiation counts follow the factorization bound") {
  Fixture f;
  SolveResult r = solveRmbDpop(f.p, f.t, rmbOpts(2, true, true, false));
  bool ok = r.status == RunStatus::Ok;
  ok = ok && r.metrics.received(11, MessageKind::Instantiation_) == 9;  // a12
  ok = ok && r.metrics.received(7, MessageKind::Instantiation_) == 81;  // a8

  int clustered = 0;
  for (std::uint64_t seed = 1; clustered < 20 && seed < 400 && ok; ++seed) {
    Problem p = randomProblem(10 + static_cast<int>(seed % 5), 0.35, seed);
    PseudoTree t = buildPseudoTree(p);
    if (detectClusters(t, 2).empty()) continue;
    ++clustered;
    SolveResult rr = solveRmbDpop(p, t, rmbOpts(2, true, true, false));
    ok = ok && rr.status == RunStatus::Ok;
    std::map<VariableId, std::vector<VariableId>> lists(rr.ccLists.begin(), rr.ccLists.end());
    for (const auto& cluster : rr.clusters) {
      for (VariableId m : cluster.members) {
        std::set<VariableId> vars(cluster.ccOut.begin(), cluster.ccOut.end());
        const auto& s = t.sep[static_cast<std::size_t>(m)];
        for (VariableId v : lists.at(m))
          if (std::find(s.begin(), s.end(), v) != s.end()) vars.insert(v);
        std::int64_t expect = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) expect *= 3;
        ok = ok && rr.metrics.received(m, MessageKind::Instantiation_) == expect;
      }
    }
  }
  ok = ok && clustered == 20;
  CHECK(reportCriterion(6, "instantiation count factorization", ok));
}

TEST_CASE("criterion 7: message dominance with identical CC lists") {
  bool ok = true;
  int clustered = 0;
  for (std::uint64_t seed = 1; clustered < 50 && seed < 600 && ok; ++seed) {
    const int n = 10 + static_cast<int>(seed % 7);
    Problem p = randomProblem(n, 0.25, seed);
    PseudoTree t = buildPseudoTree(p);
    if (detectClusters(t, 2).empty()) continue;
    ++clustered;
    SolveResult rmb = solveRmbDpop(p, t, rmbOpts(2, true, false, false));
    MbDpopOptions mb;
    mb.k = 2;
    SolveResult ref = solveMbDpop(p, t, mb);
    ok = ok && rmb.status == RunStatus::Ok && ref.status == RunStatus::Ok;
    ok = ok && rmb.cost == ref.cost;
    ok = ok && rmb.metrics.total() <= ref.metrics.total();
    bool anyInside = false;
    for (const auto& c : rmb.clusters) anyInside = anyInside || !c.ccIn.empty();
    if (anyInside) ok = ok && rmb.metrics.total() < ref.metrics.total();
  }
  ok = ok && clustered == 50;
  CHECK(reportCriterion(7, "theorem dominance over full enumeration", ok));
}

TEST_CASE("criterion 8: ablation ordering of the toggle variants") {
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
  };
  std::vector<double> allOn, demOnly, ismOnly, cacheOnly, allOff;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Problem p = randomProblem(14, 0.5, seed);
    PseudoTree t = buildPseudoTree(p);
    auto total = [&](bool dem, bool ism, bool cache) {
      SolveResult r = solveRmbDpop(p, t, rmbOpts(3, dem, ism, cache));
      REQUIRE(r.status == RunStatus::Ok);
      return static_cast<double>(r.metrics.total());
    };
    allOn.push_back(total(true, true, true));
    demOnly.push_back(total(true, false, false));
    ismOnly.push_back(total(false, true, false));
    cacheOnly.push_back(total(false, false, true));
    allOff.push_back(total(false, false, false));
  }
  const double mAllOn = median(allOn), mDem = median(demOnly), mIsm = median(ismOnly),
               mCache = median(cacheOnly), mAllOff = median(allOff);
  const bool ok = mAllOn <= mDem && mAllOn <= mIsm && mAllOn <= mCache && mDem <= mAllOff &&
                  mIsm <= mAllOff && mCache <= mAllOff;
  std::ostringstream note;
  note << "medians: all-on " << mAllOn << ", dem " << mDem << ", ism " << mIsm << ", cache "
       << mCache << ", all-off " << mAllOff;
  CHECK(reportCriterion(8, "ablation message-count ordering", ok, note.str()));
}

TEST_CASE("criterion 9: all-off equals mb-dpop message for message") {
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 20 && ok; ++seed) {
    Problem p = randomProblem(10 + static_cast<int>(seed % 4), 0.35, seed);
    PseudoTree t = buildPseudoTree(p);
    SolveResult rmb = solveRmbDpop(p, t, rmbOpts(2, false, false, false));
    MbDpopOptions mb;
    mb.k = 2;
    SolveResult ref = solveMbDpop(p, t, mb);
    ok = rmb.status == RunStatus::Ok && ref.status == RunStatus::Ok;
    ok = ok && rmb.metrics.msgCount == ref.metrics.msgCount;
    ok = ok && rmb.metrics.networkLoad == ref.metrics.networkLoad;
    ok = ok && rmb.cost == ref.cost;
  }
  CHECK(reportCriterion(9, "toggles-off equivalence to mb-dpop", ok));
}

TEST_CASE("criterion 10: byte-identical repeated solve runs") {
  const char* cli = std::getenv("DCOP_CLI");
  bool ok = cli != nullptr;
  if (ok) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dcop-acceptance";
    fs::create_directories(dir);
    const fs::path problem = dir / "problem.dcop";
    writeProblemFile(fig2Fixture(), problem.string());

    auto runOnce = [&](const std::string& tag) {
      const fs::path trace = dir / ("trace-" + tag + ".txt");
      const fs::path stdoutFile = dir / ("stdout-" + tag + ".txt");
      std::ostringstream cmd;
      cmd << "'" << cli << "' solve --algo rmb-dpop --k 2 --input '" << problem.string()
          << "' --schedule random --seed 11 --trace '" << trace.string() << "' > '"
          << stdoutFile.string() << "' 2>/dev/null";
      const int rc = std::system(cmd.str().c_str());
      std::ifstream t(trace), s(stdoutFile);
      std::stringstream tb, sb;
      tb << t.rdbuf();
      sb << s.rdbuf();
      return std::tuple{rc, tb.str(), sb.str()};
    };
    auto [rc1, trace1, out1] = runOnce("a");
    auto [rc2, trace2, out2] = runOnce("b");
    ok = rc1 == 0 && rc2 == 0 && !trace1.empty() && !out1.empty();
    ok = ok && trace1 == trace2 && out1 == out2;
  }
  CHECK(reportCriterion(10, "deterministic solve output", ok));
}
