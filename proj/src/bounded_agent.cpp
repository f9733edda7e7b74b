#include "bounded_agent.hpp"

#include <algorithm>
#include <limits>

#include "dcop/rmbdpop.hpp"

namespace dcop::detail {

namespace {

UtilityTable toUtility(const Problem& p, const CostTable& c) {
  UtilityTable t = UtilityTable::zeros({{c.i, p.domain(c.i)}, {c.j, p.domain(c.j)}});
  for (std::size_t k = 0; k < c.costs.size(); ++k) t.cell(k) = c.costs[k];
  return t;
}

}  // namespace

BoundedAgent::BoundedAgent(const Problem& p, const PseudoTree& t, VariableId self,
                           BoundedConfig cfg, NodeClusterView view, LabelingSink* sink)
    : p_(p), tree_(t), self_(self), cfg_(cfg), view_(std::move(view)), sink_(sink) {
  const auto ap = t.ancestorsConstrained(self);
  base_ = UtilityTable::zeros({{self, p.domain(self)}});
  for (const auto& c : p.constraints) {
    VariableId other = -1;
    if (c.i == self) other = c.j;
    if (c.j == self) other = c.i;
    if (other < 0) continue;
    if (std::find(ap.begin(), ap.end(), other) != ap.end())
      base_ = join(base_, toUtility(p, c));
  }
  if (!view_.isMember && !view_.isCr)
    view_.normalChildren = t.children[static_cast<std::size_t>(self)];
  normalPending_ = static_cast<int>(view_.normalChildren.size());
  baseReady_ = normalPending_ == 0;
  if (!cfg_.ism || (!view_.isMember && !view_.isCr)) {
    labelDone_ = true;
    ccList_ = view_.presetCcList;
  }
}

void BoundedAgent::assertBounded(const UtilityTable& t) const {
  if ((view_.isMember || view_.isCr) && t.dimCount() > cfg_.k)
    throw ProtocolError("bounded table exceeds dimension limit k=" + std::to_string(cfg_.k) +
                        " (got " + std::to_string(t.dimCount()) + ")");
}

std::optional<Cost> BoundedAgent::reportedOptimum() const {
  if (isRoot() && value_) return optimum_;
  return std::nullopt;
}

void BoundedAgent::start(Outbox& out) {
  if ((view_.isMember || view_.isCr) && labelDone_ && sink_)
    sink_->ccLists[self_] = ccList_;
  if (cfg_.ism && view_.isMember) ismStartRoundIfLeaf(out);
  maybeStartWork(out);
}

void BoundedAgent::receive(const Message& m, Outbox& out) {
  switch (m.kind) {
    case MessageKind::Util:
      onNormalUtil(m, out);
      break;
    case MessageKind::SepInfo:
      ismOnSepInfo(m, out);
      break;
    case MessageKind::Allocation:
      ismOnAllocation(std::get<AllocationPayload>(m.payload), out);
      break;
    case MessageKind::LabelDone:
      ismOnLabelDone(out);
      break;
    case MessageKind::Instantiation_:
    case MessageKind::FinalContext:
      enqueueSweep(m.kind, std::get<Instantiation>(m.payload), out);
      break;
    case MessageKind::BoundedUtil:
      onBoundedUtil(m, out);
      break;
    case MessageKind::Value:
      onValueMsg(std::get<Instantiation>(m.payload), out);
      break;
  }
}

void BoundedAgent::onNormalUtil(const Message& m, Outbox& out) {
  if (std::find(view_.normalChildren.begin(), view_.normalChildren.end(), m.src) ==
      view_.normalChildren.end())
    throw ProtocolError("UTIL from unexpected sender");
  if (!utilSeen_.insert(m.src).second) throw ProtocolError("duplicate UTIL from child");
  base_ = join(base_, std::get<UtilityTable>(m.payload));
  if (--normalPending_ == 0) {
    baseReady_ = true;
    maybeStartWork(out);
  }
}

void BoundedAgent::maybeStartWork(Outbox& out) {
  if (view_.isCr) {
    if (labelDone_ && !enumerationStarted_) crStartEnumeration(out);
    if (baseReady_ && enumerationStarted_) {
      // Folds stalled on the base tables can complete now.
      std::vector<std::int64_t> ready;
      for (const auto& [idx, f] : folds_)
        if (f.arrived == static_cast<int>(view_.memberChildren.size())) ready.push_back(idx);
      for (auto idx : ready) crFinishFold(idx, out);
      crMaybeFinishEnumeration(out);
    }
  } else if (view_.isMember) {
    tryProcessSweeps(out);
  } else if (baseReady_ && !value_) {
    normalFinishUtil(out);
  }
}

// ---------------------------------------------------------------- normal role

void BoundedAgent::normalFinishUtil(Outbox& out) {
  notePeak(base_.dimCount());
  auto [reduced, arg] = eliminateMin(base_, self_);
  argTable_ = std::move(arg);
  haveArg_ = true;
  if (isRoot()) {
    optimum_ = reduced.scalarValue();
    value_ = argTable_.best[0];
    Instantiation ctx;
    ctx.set(self_, *value_);
    for (VariableId c : tree_.children[static_cast<std::size_t>(self_)])
      out.send(self_, c, MessageKind::Value, ctx);
  } else {
    out.send(self_, parent(), MessageKind::Util, normalized(reduced));
  }
}

void BoundedAgent::normalOnValue(const Instantiation& ctx, Outbox& out) {
  value_ = lookupBest(argTable_, ctx);
  Instantiation down = ctx;
  down.set(self_, *value_);
  for (VariableId c : tree_.children[static_cast<std::size_t>(self_)])
    out.send(self_, c, MessageKind::Value, down);
}

// ------------------------------------------------------------------- labeling

bool BoundedAgent::active() const {
  if (!view_.isMember) return false;
  int remaining = 0;
  for (VariableId s : sep(self_))
    if (!selected_.count(s)) ++remaining;
  return remaining > cfg_.k;
}

void BoundedAgent::ismStartRoundIfLeaf(Outbox& out) {
  if (view_.memberChildren.empty()) ismSendRound(out);
}

void BoundedAgent::pruneEff(EffMap& eff) const {
  // Accruing candidates can still gain increments above this node; among the
  // finalized ones only the best survives.
  std::set<VariableId> accruing;
  for (VariableId s : sep(self_))
    if (!selected_.count(s)) accruing.insert(s);
  pruneCandidates(eff, accruing, tree_);
}

void BoundedAgent::ismSendRound(Outbox& out) {
  EffMap eff;
  bool childActive = false;
  for (VariableId c : view_.memberChildren) {
    const auto& payload = roundEff_.at(c);
    mergeEff(eff, payload.eff);
    childActive = childActive || payload.anyActive;
  }
  roundEff_.clear();
  const bool act = active();
  if (act) {
    std::vector<VariableId> rsep;
    for (VariableId s : sep(self_))
      if (!selected_.count(s)) rsep.push_back(s);
    selfIncrement(eff, rsep, true);
  }
  pruneEff(eff);
  out.send(self_, parent(), MessageKind::SepInfo, SepInfoPayload{std::move(eff), act || childActive});
}

void BoundedAgent::ismOnSepInfo(const Message& m, Outbox& out) {
  if (!cfg_.ism || (!view_.isMember && !view_.isCr))
    throw ProtocolError("unexpected SEP_INFO");
  roundEff_[m.src] = std::get<SepInfoPayload>(m.payload);
  if (roundEff_.size() != view_.memberChildren.size()) return;
  if (view_.isCr)
    crHandleRound(out);
  else
    ismSendRound(out);
}

void BoundedAgent::crHandleRound(Outbox& out) {
  if (++rounds_ > tree_.size() * (inducedWidth(tree_) + 2))
    throw ProtocolError("labeling failed to terminate");
  EffMap merged;
  bool anyActive = false;
  for (VariableId c : view_.memberChildren) {
    const auto& payload = roundEff_.at(c);
    mergeEff(merged, payload.eff);
    anyActive = anyActive || payload.anyActive;
  }
  roundEff_.clear();
  if (!anyActive) {
    finishLabeling(out);
    return;
  }
  if (merged.empty()) throw ProtocolError("active nodes reported no candidates");
  auto best = merged.counts.front();
  for (const auto& e : merged.counts)
    if (e.second > best.second || (e.second == best.second && e.first > best.first)) best = e;
  selected_.insert(best.first);
  ccList_.push_back(best.first);
  if (sink_) {
    sink_->selectionOrder.push_back(best.first);
    sink_->selectionCounts.push_back(best.second);
  }
  for (VariableId c : view_.memberChildren)
    out.send(self_, c, MessageKind::Allocation, AllocationPayload{best.first});
}

bool BoundedAgent::allocationRelevant(VariableId chosen) const {
  if (chosen == self_) return true;
  if (std::find(sep(self_).begin(), sep(self_).end(), chosen) != sep(self_).end()) return true;
  if (tree_.isAncestorOf(self_, chosen)) return true;
  return std::find(view_.crChain.begin(), view_.crChain.end(), chosen) != view_.crChain.end();
}

void BoundedAgent::ismOnAllocation(const AllocationPayload& a, Outbox& out) {
  selected_.insert(a.chosen);
  if (allocationRelevant(a.chosen) &&
      std::find(ccList_.begin(), ccList_.end(), a.chosen) == ccList_.end())
    ccList_.push_back(a.chosen);
  for (VariableId c : view_.memberChildren)
    out.send(self_, c, MessageKind::Allocation, AllocationPayload{a.chosen});
  ismStartRoundIfLeaf(out);
}

void BoundedAgent::ismOnLabelDone(Outbox& out) {
  labelDone_ = true;
  if (sink_) sink_->ccLists[self_] = ccList_;
  for (VariableId c : view_.memberChildren) out.send(self_, c, MessageKind::LabelDone, {});
  maybeStartWork(out);
}

void BoundedAgent::finishLabeling(Outbox& out) {
  labelDone_ = true;
  if (sink_) sink_->ccLists[self_] = ccList_;
  for (VariableId c : view_.memberChildren) out.send(self_, c, MessageKind::LabelDone, {});
  maybeStartWork(out);
}

// ------------------------------------------------------------- bounded sweeps

void BoundedAgent::enqueueSweep(MessageKind kind, const Instantiation& ins, Outbox& out) {
  if (!view_.isMember) throw ProtocolError("instantiation sent to a non-member");
  sweepQueue_.emplace_back(kind, ins);
  tryProcessSweeps(out);
}

void BoundedAgent::tryProcessSweeps(Outbox& out) {
  while (!sweepBusy_ && baseReady_ && labelDone_ && !sweepQueue_.empty()) {
    auto [kind, ins] = std::move(sweepQueue_.front());
    sweepQueue_.pop_front();
    sweepKind_ = kind;
    sweepIns_ = std::move(ins);
    sweepBusy_ = true;
    beginSweep(out);
  }
  if (!sweepBusy_ && sweepQueue_.empty() && bufferedValueCtx_) answerValue(out);
}

void BoundedAgent::beginSweep(Outbox& out) {
  const bool isCc = std::find(ccList_.begin(), ccList_.end(), self_) != ccList_.end();
  augmenting_ = isCc && !sweepIns_.contains(self_);
  sweepInsFull_ = sweepIns_;
  accumValid_ = false;
  curValue_ = 0;
  if (augmenting_) sweepInsFull_.set(self_, 0);
  arrivedResults_.clear();
  dispatchToChildren(sweepInsFull_, out);
}

std::vector<std::pair<VariableId, int>> BoundedAgent::childKey(VariableId child,
                                                               const Instantiation& ins) const {
  // Variables whose assignment the child's subtree actually conditions on,
  // plus (unless caching) every enumerated variable from outside the cluster.
  std::vector<std::pair<VariableId, int>> key;
  const auto& csep = sep(child);
  for (const auto& e : ins.entries) {
    const VariableId v = e.first;
    bool relevant = v == child || tree_.isAncestorOf(child, v) ||
                    std::find(csep.begin(), csep.end(), v) != csep.end();
    if (!relevant && !cfg_.cache) {
      bool isClusterMember = std::find(view_.clusterMembers.begin(), view_.clusterMembers.end(),
                                       v) != view_.clusterMembers.end();
      relevant = !isClusterMember;
    }
    if (relevant) key.push_back(e);
  }
  return key;
}

bool BoundedAgent::sendOrReuse(VariableId child, const Instantiation& ins, Outbox& out) {
  const bool dedup = cfg_.dem || cfg_.cache;
  if (dedup) {
    auto key = childKey(child, ins);
    if (sweepKind_ == MessageKind::FinalContext) {
      auto it = lastSentKey_.find(child);
      if (it != lastSentKey_.end() && it->second == key) return false;
      lastSentKey_[child] = key;  // the wave refreshes the child's state
    } else if (replyCache_[child].count(key)) {
      return false;
    }
    sentKey_[child] = std::move(key);
  }
  out.send(self_, child, sweepKind_, ins);
  return true;
}

void BoundedAgent::dispatchToChildren(const Instantiation& ins, Outbox& out) {
  waitingChildren_.clear();
  std::vector<VariableId> reused;
  for (VariableId c : view_.memberChildren) {
    if (sendOrReuse(c, ins, out))
      waitingChildren_.insert(c);
    else
      reused.push_back(c);
  }
  for (VariableId c : reused) arrivedResults_.emplace_back(c, replyCache_.at(c).at(childKey(c, ins)));
  if (waitingChildren_.empty()) finishValueStep(out);
}

void BoundedAgent::onBoundedUtil(const Message& m, Outbox& out) {
  const auto& r = std::get<BoundedResult>(m.payload);
  if (view_.isCr) {
    if (finalPhase_) return;  // re-derivation replies need no folding
    auto it = pendingIdx_.find(m.src);
    if (it == pendingIdx_.end() || it->second < 0) throw ProtocolError("unexpected BOUNDED_UTIL");
    const std::int64_t idx = it->second;
    if (auto sk = sentKey_.find(m.src); sk != sentKey_.end()) {
      replyCache_[m.src][sk->second] = r;
      lastSentKey_[m.src] = sk->second;
    }
    it->second = -1;
    nextIdx_[m.src] = idx + 1;
    crRecordReply(idx, r, out);
    crAdvanceChild(m.src, out);
    return;
  }
  childArrived(m.src, r, out);
}

void BoundedAgent::childArrived(VariableId child, const BoundedResult& r, Outbox& out) {
  if (!waitingChildren_.count(child)) throw ProtocolError("unexpected BOUNDED_UTIL");
  if (auto sk = sentKey_.find(child); sk != sentKey_.end()) {
    replyCache_[child][sk->second] = r;
    lastSentKey_[child] = sk->second;
  }
  waitingChildren_.erase(child);
  arrivedResults_.emplace_back(child, r);
  if (waitingChildren_.empty()) finishValueStep(out);
}

BoundedResult BoundedAgent::computeJoint(const Instantiation& insFull) {
  BoundedResult joint{condition(base_, insFull), {}};
  std::sort(arrivedResults_.begin(), arrivedResults_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [c, r] : arrivedResults_) joint = joinBounded(joint, r);
  notePeak(joint.table.dimCount());
  return joint;
}

void BoundedAgent::finishValueStep(Outbox& out) {
  BoundedResult joint = computeJoint(sweepInsFull_);
  if (augmenting_) {
    if (!accumValid_) {
      accum_ = joint;
      accumOwnPlane_.assign(accum_.table.cellCount(), curValue_);
      accumValid_ = true;
    } else {
      for (std::size_t i = 0; i < accum_.table.cellCount(); ++i) {
        if (joint.table.cell(i) < accum_.table.cell(i)) {
          accum_.table.cell(i) = joint.table.cell(i);
          accumOwnPlane_[i] = curValue_;
          for (std::size_t pi = 0; pi < accum_.planes.size(); ++pi)
            accum_.planes[pi].second[i] = joint.planes[pi].second[i];
        }
      }
    }
    ++curValue_;
    if (curValue_ < p_.domain(self_)) {
      sweepInsFull_.set(self_, curValue_);
      arrivedResults_.clear();
      dispatchToChildren(sweepInsFull_, out);
      return;
    }
    memberFinishSweep(out);
    return;
  }
  // Non-augmenting: own variable is either pinned by the instantiation or
  // eliminated here.
  BoundedResult result;
  if (!sweepInsFull_.contains(self_)) {
    result = eliminateMinBounded(joint, self_, /*recordVar=*/false, &argTable_);
    haveArg_ = true;
  } else {
    result = std::move(joint);
  }
  lastFullIns_ = sweepInsFull_;
  assertBounded(result.table);
  out.send(self_, parent(), MessageKind::BoundedUtil, std::move(result));
  sweepBusy_ = false;
  tryProcessSweeps(out);
}

void BoundedAgent::memberFinishSweep(Outbox& out) {
  BoundedResult result = accum_;
  argTable_ = ArgTable{result.table.dims(), accumOwnPlane_};
  haveArg_ = true;
  result.planes.emplace_back(self_, accumOwnPlane_);
  lastFullIns_ = sweepIns_;
  assertBounded(result.table);
  out.send(self_, parent(), MessageKind::BoundedUtil, std::move(result));
  sweepBusy_ = false;
  tryProcessSweeps(out);
}

void BoundedAgent::onValueMsg(const Instantiation& ctx, Outbox& out) {
  if (view_.isCr) {
    crBeginFinal(ctx, out);
    return;
  }
  if (!view_.isMember) {
    normalOnValue(ctx, out);
    return;
  }
  bufferedValueCtx_ = ctx;
  if (!sweepBusy_ && sweepQueue_.empty()) answerValue(out);
}

void BoundedAgent::answerValue(Outbox& out) {
  Instantiation ctx = *bufferedValueCtx_;
  bufferedValueCtx_.reset();
  if (lastFullIns_.contains(self_)) {
    value_ = lastFullIns_.valueOf(self_);
  } else {
    Instantiation merged = ctx;
    for (const auto& e : lastFullIns_.entries)
      if (!merged.contains(e.first)) merged.entries.push_back(e);
    if (!haveArg_) throw ProtocolError("VALUE before any bounded sweep");
    value_ = lookupBest(argTable_, merged);
  }
  Instantiation down = ctx;
  down.set(self_, *value_);
  for (VariableId c : tree_.children[static_cast<std::size_t>(self_)])
    out.send(self_, c, MessageKind::Value, down);
}

// --------------------------------------------------------- root enumeration

void BoundedAgent::crStartEnumeration(Outbox& out) {
  enumerationStarted_ = true;
  std::vector<VariableId> full = ccList_;
  std::sort(full.begin(), full.end());
  std::vector<VariableId> ccOut;
  const auto& s = sep(self_);
  for (VariableId v : full)
    if (v == self_ || std::find(s.begin(), s.end(), v) != s.end()) ccOut.push_back(v);
  enumVars_ = cfg_.dem ? ccOut : full;
  enumTotal_ = 1;
  for (VariableId v : enumVars_) enumTotal_ *= p_.domain(v);

  sepDims_.clear();
  for (VariableId v : s) sepDims_.push_back({v, p_.domain(v)});
  std::size_t cells = 1;
  for (const auto& d : sepDims_) cells *= static_cast<std::size_t>(d.size);
  bestCost_.assign(cells, std::numeric_limits<Cost>::max());
  bestIns_.assign(cells, {});
  bestCrVal_.assign(cells, 0);

  if (sink_) {
    ClusterSummary cs;
    cs.cr = self_;
    cs.members = view_.clusterMembers;
    cs.ccOut = ccOut;
    for (VariableId v : full)
      if (std::find(ccOut.begin(), ccOut.end(), v) == ccOut.end()) cs.ccIn.push_back(v);
    sink_->clusters.push_back(std::move(cs));
  }

  sweepKind_ = MessageKind::Instantiation_;
  for (VariableId c : view_.memberChildren) {
    nextIdx_[c] = 0;
    pendingIdx_[c] = -1;
    crAdvanceChild(c, out);
  }
}

Instantiation BoundedAgent::insAt(std::int64_t idx) const {
  Instantiation ins;
  std::int64_t rem = idx;
  std::vector<int> coords(enumVars_.size(), 0);
  for (std::size_t i = enumVars_.size(); i-- > 0;) {
    const int d = p_.domain(enumVars_[i]);
    coords[i] = static_cast<int>(rem % d);
    rem /= d;
  }
  for (std::size_t i = 0; i < enumVars_.size(); ++i) ins.set(enumVars_[i], coords[i]);
  return ins;
}

void BoundedAgent::crAdvanceChild(VariableId child, Outbox& out) {
  const bool dedup = cfg_.dem || cfg_.cache;
  while (nextIdx_[child] < enumTotal_) {
    const std::int64_t idx = nextIdx_[child];
    Instantiation ins = insAt(idx);
    if (dedup) {
      auto key = childKey(child, ins);
      auto cached = replyCache_[child].find(key);
      if (cached != replyCache_[child].end()) {
        nextIdx_[child] = idx + 1;
        crRecordReply(idx, cached->second, out);
        continue;
      }
      sentKey_[child] = std::move(key);
    }
    out.send(self_, child, MessageKind::Instantiation_, std::move(ins));
    pendingIdx_[child] = idx;
    return;
  }
}

void BoundedAgent::crRecordReply(std::int64_t idx, const BoundedResult& r, Outbox& out) {
  Fold& f = folds_[idx];
  f.joined = f.any ? joinBounded(f.joined, r) : r;
  f.any = true;
  ++f.arrived;
  if (f.arrived == static_cast<int>(view_.memberChildren.size()) && baseReady_)
    crFinishFold(idx, out);
}

void BoundedAgent::crFinishFold(std::int64_t idx, Outbox& out) {
  Instantiation ins = insAt(idx);
  BoundedResult joint = joinBounded({condition(base_, ins), {}}, folds_[idx].joined);
  notePeak(joint.table.dimCount());
  folds_.erase(idx);

  BoundedResult residual;
  ArgTable crArg;
  const bool crPinned = ins.contains(self_);
  if (crPinned)
    residual = std::move(joint);
  else
    residual = eliminateMinBounded(joint, self_, /*recordVar=*/false, &crArg);
  assertBounded(residual.table);

  const auto& rdims = residual.table.dims();
  std::vector<int> coords(rdims.size(), 0);
  std::size_t off = 0;
  const std::size_t cellTotal = residual.table.cellCount();
  for (off = 0; off < cellTotal; ++off) {
    residual.table.coordsOf(off, coords);
    // Full separator cell: instantiated vars from ins, the rest from coords.
    std::size_t cell = 0;
    for (const auto& d : sepDims_) {
      int v = ins.valueOf(d.var);
      if (v < 0) {
        int pos = residual.table.indexOfVar(d.var);
        if (pos < 0) throw ProtocolError("separator variable missing from fold");
        v = coords[static_cast<std::size_t>(pos)];
      }
      cell = cell * static_cast<std::size_t>(d.size) + static_cast<std::size_t>(v);
    }
    const Cost cost = residual.table.cell(off);
    if (cost < bestCost_[cell]) {
      bestCost_[cell] = cost;
      Instantiation full = ins;
      for (const auto& [var, plane] : residual.planes) full.set(var, plane[off]);
      bestIns_[cell] = std::move(full);
      bestCrVal_[cell] = crPinned ? ins.valueOf(self_) : crArg.best[off];
    }
  }
  ++foldedCount_;
  crMaybeFinishEnumeration(out);
}

void BoundedAgent::crMaybeFinishEnumeration(Outbox& out) {
  if (enumerationDone_ || foldedCount_ != enumTotal_) return;
  enumerationDone_ = true;
  UtilityTable best = UtilityTable::zeros(sepDims_);
  for (std::size_t i = 0; i < bestCost_.size(); ++i) {
    if (bestCost_[i] == std::numeric_limits<Cost>::max())
      throw ProtocolError("enumeration left an unreached separator cell");
    best.cell(i) = bestCost_[i];
  }
  if (isRoot()) {
    optimum_ = best.scalarValue();
    crBeginFinal(Instantiation{}, out);
  } else {
    out.send(self_, parent(), MessageKind::Util, std::move(best));
  }
}

void BoundedAgent::crBeginFinal(const Instantiation& ctx, Outbox& out) {
  if (!enumerationDone_) throw ProtocolError("VALUE reached cluster root before its UTIL");
  finalPhase_ = true;
  std::size_t cell = 0;
  for (const auto& d : sepDims_) {
    const int v = ctx.valueOf(d.var);
    if (v < 0) throw ProtocolError("VALUE context missing a separator variable");
    cell = cell * static_cast<std::size_t>(d.size) + static_cast<std::size_t>(v);
  }
  finalIns_ = bestIns_[cell];
  value_ = bestCrVal_[cell];

  sweepKind_ = MessageKind::FinalContext;
  const bool dedup = cfg_.dem || cfg_.cache;
  for (VariableId c : view_.memberChildren) {
    if (dedup) {
      auto key = childKey(c, finalIns_);
      auto it = lastSentKey_.find(c);
      if (it != lastSentKey_.end() && it->second == key) continue;  // child state already matches
      lastSentKey_[c] = std::move(key);
    }
    out.send(self_, c, MessageKind::FinalContext, finalIns_);
  }
  Instantiation down = ctx;
  down.set(self_, *value_);
  for (VariableId c : tree_.children[static_cast<std::size_t>(self_)])
    out.send(self_, c, MessageKind::Value, down);
}

// ------------------------------------------------------------------- harness

SolveResult runBounded(const Problem& p, const PseudoTree& tree, int k, BoundedConfig cfg,
                       CcHeuristic heuristic, const RunOptions& opts, const char* label) {
  auto clusters = detectClusters(tree, k);
  if (!cfg.ism) labelMbDpop(tree, k, heuristic, clusters);

  std::vector<NodeClusterView> views(static_cast<std::size_t>(p.n));
  for (const auto& cluster : clusters) {
    std::vector<VariableId> chain;
    for (VariableId u = cluster.cr; u >= 0; u = tree.parent[static_cast<std::size_t>(u)])
      chain.push_back(u);
    auto isMember = [&](VariableId v) {
      return std::binary_search(cluster.members.begin(), cluster.members.end(), v);
    };
    auto setup = [&](VariableId v, bool cr) {
      NodeClusterView& view = views[static_cast<std::size_t>(v)];
      view.isCr = cr;
      view.isMember = !cr;
      view.cr = cluster.cr;
      view.clusterMembers = cluster.members;
      view.crChain = chain;
      for (VariableId c : tree.children[static_cast<std::size_t>(v)]) {
        if (isMember(c))
          view.memberChildren.push_back(c);
        else
          view.normalChildren.push_back(c);
      }
      if (!cfg.ism) {
        auto it = cluster.ccList.find(v);
        if (it != cluster.ccList.end()) view.presetCcList = it->second;
      }
    };
    setup(cluster.cr, true);
    for (VariableId m : cluster.members) setup(m, false);
  }

  LabelingSink sink;
  auto factory = [&](VariableId v) {
    return std::make_unique<BoundedAgent>(p, tree, v, cfg, views[static_cast<std::size_t>(v)],
                                          &sink);
  };
  SolveResult r = run(p, tree, factory, opts);
  r.algoLabel = label;
  for (const auto& [node, list] : sink.ccLists) r.ccLists.emplace_back(node, list);
  r.selectionOrder = sink.selectionOrder;
  r.selectionCounts = sink.selectionCounts;
  r.clusters = sink.clusters;
  std::sort(r.clusters.begin(), r.clusters.end(),
            [](const ClusterSummary& a, const ClusterSummary& b) { return a.cr < b.cr; });
  if (opts.trace && r.status == RunStatus::Ok) {
    for (const auto& [node, list] : r.ccLists) {
      (*opts.trace) << "cc " << node;
      for (VariableId v : list) (*opts.trace) << " " << v;
      (*opts.trace) << "\n";
    }
  }
  return r;
}

}  // namespace dcop::detail
