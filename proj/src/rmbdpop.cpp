#include "dcop/rmbdpop.hpp"

#include <algorithm>

#include "bounded_agent.hpp"

namespace dcop {

void mergeEff(EffMap& dst, const EffMap& src) {
  for (const auto& [var, count] : src.counts) dst.add(var, count);
}

void selfIncrement(EffMap& eff, std::span<const VariableId> rsep, bool active) {
  if (!active) return;
  for (VariableId v : rsep) eff.add(v, 1);
}

void pruneCandidates(EffMap& eff, const std::set<VariableId>& accruing, const PseudoTree& t) {
  std::vector<std::size_t> finalized;
  for (std::size_t i = 0; i < eff.counts.size(); ++i)
    if (!accruing.count(eff.counts[i].first)) finalized.push_back(i);
  if (finalized.size() <= 1) return;
  auto better = [&](std::size_t a, std::size_t b) {
    const auto [va, ca] = eff.counts[a];
    const auto [vb, cb] = eff.counts[b];
    if (ca != cb) return ca > cb;
    const auto cha = t.children[static_cast<std::size_t>(va)].size();
    const auto chb = t.children[static_cast<std::size_t>(vb)].size();
    if (cha != chb) return cha < chb;
    if (t.depth[static_cast<std::size_t>(va)] != t.depth[static_cast<std::size_t>(vb)])
      return t.depth[static_cast<std::size_t>(va)] > t.depth[static_cast<std::size_t>(vb)];
    return va > vb;
  };
  std::size_t keep = finalized[0];
  for (std::size_t i : finalized)
    if (better(i, keep)) keep = i;
  std::vector<std::pair<VariableId, int>> pruned;
  for (std::size_t i = 0; i < eff.counts.size(); ++i) {
    const bool drop =
        std::find(finalized.begin(), finalized.end(), i) != finalized.end() && i != keep;
    if (!drop) pruned.push_back(eff.counts[i]);
  }
  eff.counts = std::move(pruned);
}

SolveResult solveRmbDpop(const Problem& p, const PseudoTree& tree, const RmbDpopOptions& opts) {
  detail::BoundedConfig cfg;
  cfg.k = opts.k;
  cfg.dem = opts.toggles.dem;
  cfg.ism = opts.toggles.ism;
  cfg.cache = opts.toggles.cache;
  return detail::runBounded(p, tree, opts.k, cfg, CcHeuristic::Highest, opts.run, "rmb-dpop");
}

}  // namespace dcop
