#include "dcop/dpop.hpp"

#include <algorithm>
#include <set>

namespace dcop {

namespace {

/// Converts a binary cost table to a utility table with dims (i, j).
UtilityTable toUtility(const Problem& p, const CostTable& c) {
  UtilityTable t = UtilityTable::zeros({{c.i, p.domain(c.i)}, {c.j, p.domain(c.j)}});
  for (std::size_t k = 0; k < c.costs.size(); ++k) t.cell(k) = c.costs[k];
  return t;
}

class DpopAgent : public Agent {
 public:
  DpopAgent(const Problem& p, const PseudoTree& t, VariableId self) : p_(p), t_(t), self_(self) {
    const auto ap = t.ancestorsConstrained(self);
    for (const auto& c : p.constraints) {
      VariableId other = -1;
      if (c.i == self) other = c.j;
      if (c.j == self) other = c.i;
      if (other < 0) continue;
      if (std::find(ap.begin(), ap.end(), other) != ap.end()) local_.push_back(toUtility(p, c));
    }
    pendingChildren_ = static_cast<int>(t.children[static_cast<std::size_t>(self)].size());
  }

  void start(Outbox& out) override {
    if (pendingChildren_ == 0) finishUtil(out);
  }

  void receive(const Message& m, Outbox& out) override {
    switch (m.kind) {
      case MessageKind::Util: {
        if (!received_.insert(m.src).second)
          throw ProtocolError("duplicate UTIL from child " + std::to_string(m.src));
        childTables_.push_back(std::get<UtilityTable>(m.payload));
        if (--pendingChildren_ == 0) finishUtil(out);
        break;
      }
      case MessageKind::Value:
        onValue(std::get<Instantiation>(m.payload), out);
        break;
      default:
        throw ProtocolError("unexpected message kind for DPOP");
    }
  }

  std::optional<int> chosenValue() const override { return value_; }
  int peakDims() const override { return peakDims_; }
  std::optional<Cost> reportedOptimum() const override {
    if (t_.root == self_ && value_) return optimum_;
    return std::nullopt;
  }

 private:
  void finishUtil(Outbox& out) {
    UtilityTable joint = UtilityTable::zeros({{self_, p_.domain(self_)}});
    for (const auto& t : local_) joint = join(joint, t);
    for (const auto& t : childTables_) joint = join(joint, t);
    peakDims_ = std::max(peakDims_, joint.dimCount());
    auto [reduced, arg] = eliminateMin(joint, self_);
    arg_ = std::move(arg);
    if (t_.parent[static_cast<std::size_t>(self_)] < 0) {
      optimum_ = reduced.scalarValue();
      value_ = arg_.best[0];
      sendValues(Instantiation{}, out);
    } else {
      out.send(self_, t_.parent[static_cast<std::size_t>(self_)], MessageKind::Util,
               normalized(reduced));
    }
  }

  void onValue(const Instantiation& ctx, Outbox& out) {
    value_ = lookupBest(arg_, ctx);
    sendValues(ctx, out);
  }

  void sendValues(Instantiation ctx, Outbox& out) {
    ctx.set(self_, *value_);
    for (VariableId c : t_.children[static_cast<std::size_t>(self_)])
      out.send(self_, c, MessageKind::Value, ctx);
  }

  const Problem& p_;
  const PseudoTree& t_;
  VariableId self_;
  std::vector<UtilityTable> local_;
  std::vector<UtilityTable> childTables_;
  std::set<VariableId> received_;
  int pendingChildren_ = 0;
  ArgTable arg_;
  std::optional<int> value_;
  Cost optimum_ = 0;
  int peakDims_ = 0;
};

}  // namespace

SolveResult solveDpop(const Problem& p, const PseudoTree& tree, const DpopOptions& opts) {
  if (opts.maxDims > 0 && inducedWidth(tree) > opts.maxDims) {
    SolveResult r;
    r.status = RunStatus::WidthExceeded;
    r.algoLabel = "dpop";
    r.metrics.receivedByAgent.assign(static_cast<std::size_t>(p.n), {});
    return r;
  }
  auto factory = [&](VariableId v) { return std::make_unique<DpopAgent>(p, tree, v); };
  SolveResult r = run(p, tree, factory, opts.run);
  r.algoLabel = "dpop";
  return r;
}

}  // namespace dcop
