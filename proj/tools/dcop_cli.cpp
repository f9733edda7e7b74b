// Command-line front end: problem generation, solving, benchmarking and the
// brute-force oracle.
//
// Exit codes: 0 ok, 2 timeout, 3 invalid input, 4 width exceeded.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dcop/bench.hpp"
#include "dcop/dpop.hpp"
#include "dcop/io.hpp"
#include "dcop/mbdpop.hpp"
#include "dcop/rmbdpop.hpp"

namespace {

int runGen(const dcop::GenConfig& cfg, const std::string& outPath) {
  dcop::Problem p = dcop::generate(cfg);
  if (outPath.empty())
    dcop::writeProblem(p, std::cout);
  else
    dcop::writeProblemFile(p, outPath);
  return 0;
}

void printResult(const dcop::SolveResult& r) {
  std::cout << "algo=" << r.algoLabel << "\n";
  std::cout << "cost=" << r.cost << "\n";
  std::cout << "assignment=";
  for (std::size_t i = 0; i < r.assignment.values.size(); ++i)
    std::cout << (i ? "," : "") << r.assignment.values[i];
  std::cout << "\n";
  std::cout << "msg_total=" << r.metrics.total();
  for (int k = 0; k < dcop::kMessageKinds; ++k) {
    auto kind = static_cast<dcop::MessageKind>(k);
    std::cout << " " << dcop::kindName(kind) << "=" << r.metrics.count(kind);
  }
  std::cout << "\n";
  std::cout << "network_load=" << r.metrics.networkLoad << "\n";
  std::cout << "peak_dims=" << r.metrics.peakTableDims << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DCOP solver suite: DPOP, MB-DPOP and RMB-DPOP on a simulated runtime"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a problem instance");
  std::string genKind = "random";
  dcop::GenConfig gcfg;
  std::string genOut;
  gen->add_option("kind", genKind, "random|scalefree")->check(CLI::IsMember({"random", "scalefree"}));
  gen->add_option("--n", gcfg.n, "agent count")->required();
  gen->add_option("--density", gcfg.density, "edge density (random)");
  gen->add_option("--m0", gcfg.m0, "seed nodes (scalefree)");
  gen->add_option("--m1", gcfg.m1, "edges per new node (scalefree)");
  gen->add_option("--domain", gcfg.domainSize, "domain size")->default_val(3);
  gen->add_option("--cost-max", gcfg.costMax, "costs drawn from [0,cost-max)")->default_val(100);
  gen->add_option("--seed", gcfg.seed, "generator seed")->default_val(0);
  gen->add_option("--out", genOut, "output file (stdout when absent)");

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "solve a problem file");
  std::string algo = "dpop", input, schedule = "fifo", ccHeuristic = "highest", tracePath;
  int k = 2, maxDims = 0;
  std::uint64_t seed = 0;
  double timeout = 0.0;
  bool noDem = false, noIsm = false, noCache = false;
  solve->add_option("--algo", algo, "dpop|mb-dpop|rmb-dpop")
      ->check(CLI::IsMember({"dpop", "mb-dpop", "rmb-dpop"}))
      ->required();
  solve->add_option("--k", k, "dimension limit for bounded algorithms")->default_val(2);
  solve->add_option("--input", input, "problem file")->required();
  solve->add_option("--seed", seed, "schedule seed")->default_val(0);
  solve->add_option("--schedule", schedule, "fifo|random")->check(CLI::IsMember({"fifo", "random"}));
  solve->add_option("--timeout", timeout, "seconds (0 = none)")->default_val(0.0);
  solve->add_option("--cc-heuristic", ccHeuristic, "highest|lowest (mb-dpop)")
      ->check(CLI::IsMember({"highest", "lowest"}));
  solve->add_option("--max-dims", maxDims, "dpop dimension cap (0 = unlimited)")->default_val(0);
  solve->add_flag("--no-dem", noDem, "disable distributed enumeration");
  solve->add_flag("--no-ism", noIsm, "disable iterative selection labeling");
  solve->add_flag("--no-cache", noCache, "disable result caching");
  solve->add_option("--trace", tracePath, "write a message trace to this file");

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "run an experiment sweep");
  std::string benchConfig, benchOut;
  bench->add_option("--config", benchConfig, "experiment config (json)")->required();
  bench->add_option("--out", benchOut, "CSV output file")->required();

  // --- oracle ---
  auto* oracle = app.add_subcommand("oracle", "brute-force optimum of a problem file");
  std::string oracleInput;
  oracle->add_option("--input", oracleInput, "problem file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gcfg.kind = genKind == "scalefree" ? dcop::GraphKind::ScaleFree : dcop::GraphKind::Random;
      return runGen(gcfg, genOut);
    }
    if (solve->parsed()) {
      dcop::Problem p = dcop::readProblemFile(input);
      auto errors = dcop::validate(p);
      if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "invalid problem: " << e << "\n";
        return 3;
      }
      dcop::PseudoTree tree = dcop::buildPseudoTree(p);
      dcop::AlgoSpec spec;
      spec.name = algo;
      spec.k = k;
      spec.dpopMaxDims = maxDims;
      spec.heuristic =
          ccHeuristic == "lowest" ? dcop::CcHeuristic::Lowest : dcop::CcHeuristic::Highest;
      spec.toggles = {!noDem, !noIsm, !noCache};
      dcop::RunOptions run;
      run.schedule = schedule == "random" ? dcop::Schedule::Random : dcop::Schedule::Fifo;
      run.scheduleSeed = seed;
      run.timeoutSec = timeout;
      std::ofstream traceFile;
      if (!tracePath.empty()) {
        traceFile.open(tracePath);
        if (!traceFile) {
          std::cerr << "cannot open trace file " << tracePath << "\n";
          return 3;
        }
        run.trace = &traceFile;
      }
      dcop::SolveResult r = dcop::runAlgo(p, tree, spec, run);
      if (r.status == dcop::RunStatus::WidthExceeded) {
        std::cerr << "width exceeded: induced width " << dcop::inducedWidth(tree) << " > "
                  << maxDims << "\n";
        return 4;
      }
      if (r.status == dcop::RunStatus::Timeout) {
        std::cerr << "timeout after " << timeout << "s\n";
        return 2;
      }
      printResult(r);
      std::cerr << "elapsed_ms=" << r.metrics.elapsedMs << "\n";
      return 0;
    }
    if (bench->parsed()) {
      std::ifstream cfgFile(benchConfig);
      if (!cfgFile) {
        std::cerr << "cannot open config " << benchConfig << "\n";
        return 3;
      }
      dcop::ExperimentConfig cfg = dcop::parseExperimentConfig(cfgFile);
      auto rows = dcop::runExperiment(cfg);
      std::ofstream out(benchOut);
      if (!out) {
        std::cerr << "cannot open output " << benchOut << "\n";
        return 3;
      }
      dcop::writeCsv(rows, out);
      return 0;
    }
    if (oracle->parsed()) {
      dcop::Problem p = dcop::readProblemFile(oracleInput);
      auto [assignment, cost] = dcop::bruteForce(p);
      std::cout << "cost=" << cost << "\n";
      std::cout << "assignment=";
      for (std::size_t i = 0; i < assignment.values.size(); ++i)
        std::cout << (i ? "," : "") << assignment.values[i];
      std::cout << "\n";
      return 0;
    }
  } catch (const dcop::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
