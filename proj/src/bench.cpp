#include "dcop/bench.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dcop/dpop.hpp"
#include "dcop/mbdpop.hpp"

namespace dcop {

std::pair<Assignment, Cost> bruteForce(const Problem& p, std::int64_t maxStates) {
  std::int64_t states = 1;
  for (int v = 0; v < p.n; ++v) {
    states *= p.domain(v);
    if (states > maxStates) throw std::invalid_argument("instance too large for brute force");
  }
  Assignment cur(p.n);
  for (auto& v : cur.values) v = 0;
  Assignment best = cur;
  Cost bestCost = totalCost(p, cur);
  while (true) {
    int i = p.n - 1;
    for (; i >= 0; --i) {
      if (++cur.values[static_cast<std::size_t>(i)] < p.domain(i)) break;
      cur.values[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
    const Cost c = totalCost(p, cur);
    if (c < bestCost) {  // strict: first minimum in lexicographic order wins
      bestCost = c;
      best = cur;
    }
  }
  return {best, bestCost};
}

std::string AlgoSpec::label() const {
  if (name == "dpop") return "dpop";
  std::string l = name + "-k" + std::to_string(k);
  if (name == "mb-dpop" && heuristic == CcHeuristic::Lowest) l += "-lowest";
  if (name == "rmb-dpop") {
    if (!toggles.dem) l += "-nodem";
    if (!toggles.ism) l += "-noism";
    if (!toggles.cache) l += "-nocache";
  }
  return l;
}

SolveResult runAlgo(const Problem& p, const PseudoTree& tree, const AlgoSpec& spec,
                    const RunOptions& run) {
  if (spec.name == "dpop") {
    DpopOptions o;
    o.maxDims = spec.dpopMaxDims;
    o.run = run;
    return solveDpop(p, tree, o);
  }
  if (spec.name == "mb-dpop") {
    MbDpopOptions o;
    o.k = spec.k;
    o.heuristic = spec.heuristic;
    o.run = run;
    return solveMbDpop(p, tree, o);
  }
  if (spec.name == "rmb-dpop") {
    RmbDpopOptions o;
    o.k = spec.k;
    o.toggles = spec.toggles;
    o.run = run;
    return solveRmbDpop(p, tree, o);
  }
  throw std::invalid_argument("unknown algorithm: " + spec.name);
}

namespace {

std::string statusName(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::WidthExceeded: return "width-exceeded";
  }
  return "?";
}

std::string togglesName(const AlgoSpec& spec) {
  if (spec.name != "rmb-dpop") return "-";
  std::string s;
  s += spec.toggles.dem ? "d" : ".";
  s += spec.toggles.ism ? "i" : ".";
  s += spec.toggles.cache ? "c" : ".";
  return s;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

std::vector<ResultRow> runExperiment(const ExperimentConfig& cfg) {
  std::vector<ResultRow> rows;
  struct Point {
    std::string label;
    GenConfig gen;
  };
  std::vector<Point> points;
  if (cfg.base.kind == GraphKind::Random) {
    for (int n : cfg.agentCounts)
      for (double d : cfg.densities) {
        GenConfig g = cfg.base;
        g.n = n;
        g.density = d;
        std::ostringstream label;
        label << "n" << n << "-p" << d;
        points.push_back({label.str(), g});
      }
  } else {
    for (int n : cfg.agentCounts)
      for (int m1 : cfg.m1Values) {
        GenConfig g = cfg.base;
        g.n = n;
        g.m1 = m1;
        std::ostringstream label;
        label << "n" << n << "-m1_" << m1;
        points.push_back({label.str(), g});
      }
  }

  for (const auto& point : points) {
    std::vector<std::vector<ResultRow>> perAlgo(cfg.algorithms.size());
    for (int inst = 0; inst < cfg.instances; ++inst) {
      GenConfig g = point.gen;
      g.seed = cfg.seedBase + static_cast<std::uint64_t>(inst);
      Problem p = generate(g);
      PseudoTree tree = buildPseudoTree(p);
      for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        const auto& spec = cfg.algorithms[ai];
        RunOptions run;
        run.timeoutSec = cfg.timeoutSec;
        ResultRow row;
        row.point = point.label;
        row.algo = spec.label();
        row.k = spec.name == "dpop" ? spec.dpopMaxDims : spec.k;
        row.toggles = togglesName(spec);
        row.seed = g.seed;
        SolveResult r = runAlgo(p, tree, spec, run);
        row.status = statusName(r.status);
        row.cost = r.status == RunStatus::Ok ? r.cost : 0;
        row.metrics = r.metrics;
        perAlgo[ai].push_back(row);
        rows.push_back(std::move(row));
      }
    }
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
      const auto& group = perAlgo[ai];
      ResultRow sum;
      sum.point = point.label;
      sum.algo = cfg.algorithms[ai].label() + "/median";
      sum.k = group.front().k;
      sum.toggles = group.front().toggles;
      sum.seed = 0;
      int ok = 0;
      std::vector<double> cost, total, load, elapsed;
      for (const auto& r : group) {
        if (r.status != "ok") continue;
        ++ok;
        cost.push_back(static_cast<double>(r.cost));
        total.push_back(static_cast<double>(r.metrics.total()));
        load.push_back(static_cast<double>(r.metrics.networkLoad));
        elapsed.push_back(r.metrics.elapsedMs);
      }
      sum.status = std::to_string(ok) + "/" + std::to_string(group.size()) + "-ok";
      sum.cost = static_cast<Cost>(median(cost));
      sum.metrics.networkLoad = static_cast<std::int64_t>(median(load));
      sum.metrics.elapsedMs = median(elapsed);
      sum.summary = true;
      sum.medianTotal = median(total);
      rows.push_back(std::move(sum));
    }
  }
  return rows;
}

void writeCsv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "point,algo,k,toggles,seed,status,cost,msg_total,msg_util,msg_inst,msg_bounded,"
        "msg_sepinfo,msg_alloc,msg_value,network_load,elapsed_ms\n";
  for (const auto& r : rows) {
    os << r.point << "," << r.algo << "," << r.k << "," << r.toggles << "," << r.seed << ","
       << r.status << "," << r.cost << ",";
    if (r.summary) {
      os << static_cast<std::int64_t>(r.medianTotal) << ",,,,,,," << r.metrics.networkLoad << ","
         << static_cast<std::int64_t>(r.metrics.elapsedMs) << "\n";
      continue;
    }
    os << r.metrics.total() << "," << r.metrics.count(MessageKind::Util) << ","
       << r.metrics.count(MessageKind::Instantiation_) << ","
       << r.metrics.count(MessageKind::BoundedUtil) << "," << r.metrics.count(MessageKind::SepInfo)
       << "," << r.metrics.count(MessageKind::Allocation) << ","
       << r.metrics.count(MessageKind::Value) << "," << r.metrics.networkLoad << ","
       << static_cast<std::int64_t>(r.metrics.elapsedMs) << "\n";
  }
}

std::vector<std::vector<double>> successRate(const std::vector<ResultRow>& rows,
                                             const std::vector<std::string>& algoLabels,
                                             const std::vector<double>& limitsMs) {
  std::vector<std::vector<double>> out(algoLabels.size(), std::vector<double>(limitsMs.size(), 0.0));
  for (std::size_t ai = 0; ai < algoLabels.size(); ++ai) {
    int total = 0;
    std::vector<int> ok(limitsMs.size(), 0);
    for (const auto& r : rows) {
      if (r.algo != algoLabels[ai]) continue;
      ++total;
      if (r.status != "ok") continue;
      for (std::size_t li = 0; li < limitsMs.size(); ++li)
        if (r.metrics.elapsedMs < limitsMs[li]) ++ok[li];
    }
    for (std::size_t li = 0; li < limitsMs.size(); ++li)
      out[ai][li] = total ? static_cast<double>(ok[li]) / total : 0.0;
  }
  return out;
}

ExperimentConfig parseExperimentConfig(std::istream& is) {
  nlohmann::json j;
  is >> j;
  ExperimentConfig cfg;
  const std::string kind = j.value("kind", "random");
  cfg.base.kind = kind == "scalefree" ? GraphKind::ScaleFree : GraphKind::Random;
  cfg.base.domainSize = j.value("domain", 3);
  cfg.base.costMax = j.value("cost_max", 100);
  cfg.base.m0 = j.value("m0", 0);
  cfg.agentCounts = j.value("n", std::vector<int>{});
  cfg.densities = j.value("density", std::vector<double>{});
  cfg.m1Values = j.value("m1", std::vector<int>{});
  cfg.instances = j.value("instances", 50);
  cfg.seedBase = j.value("seed_base", 1ULL);
  cfg.timeoutSec = j.value("timeout_sec", 0.0);
  for (const auto& a : j.at("algorithms")) {
    AlgoSpec spec;
    spec.name = a.at("name").get<std::string>();
    spec.k = a.value("k", 2);
    spec.dpopMaxDims = a.value("max_dims", 9);
    if (a.value("heuristic", "highest") == "lowest") spec.heuristic = CcHeuristic::Lowest;
    spec.toggles.dem = a.value("dem", true);
    spec.toggles.ism = a.value("ism", true);
    spec.toggles.cache = a.value("cache", true);
    cfg.algorithms.push_back(std::move(spec));
  }
  return cfg;
}

}  // namespace dcop
