#include "dcop/mbdpop.hpp"

#include "bounded_agent.hpp"

namespace dcop {

SolveResult solveMbDpop(const Problem& p, const PseudoTree& tree, const MbDpopOptions& opts) {
  detail::BoundedConfig cfg;
  cfg.k = opts.k;
  cfg.dem = false;
  cfg.ism = false;
  cfg.cache = false;
  const char* label = opts.heuristic == CcHeuristic::Highest ? "mb-dpop" : "mb-dpop-lowest";
  return detail::runBounded(p, tree, opts.k, cfg, opts.heuristic, opts.run, label);
}

}  // namespace dcop
