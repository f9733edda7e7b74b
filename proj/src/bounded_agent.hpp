#pragma once

// Shared agent for the memory-bounded solvers. MB-DPOP and the ablation
// variants are configurations of the same state machine:
//   - enumeration: full CC list at the cluster root, or ccOut-only with
//     branch-local augmentation (distributed enumeration)
//   - labeling: centrally precomputed lists, or the iterative selection
//     protocol over SEP_INFO / ALLOCATION messages
//   - caching: cross-sweep reuse of child results keyed on the child-relevant
//     projection of the instantiation

#include <deque>
#include <map>
#include <optional>
#include <set>

#include "dcop/clusters.hpp"
#include "dcop/runtime.hpp"

namespace dcop::detail {

struct BoundedConfig {
  int k = 2;
  bool dem = false;
  bool ism = false;
  bool cache = false;
};

/// Collected by agents during the run; copied into SolveResult afterwards.
struct LabelingSink {
  std::map<VariableId, std::vector<VariableId>> ccLists;
  std::vector<VariableId> selectionOrder;
  std::vector<int> selectionCounts;
  std::vector<ClusterSummary> clusters;
};

struct NodeClusterView {
  bool isMember = false;
  bool isCr = false;
  VariableId cr = -1;                        // this node's cluster root (members + CR)
  std::vector<VariableId> memberChildren;    // children inside the cluster
  std::vector<VariableId> normalChildren;    // every other child
  std::vector<VariableId> clusterMembers;    // all members of this cluster, sorted
  std::vector<VariableId> crChain;           // ancestors of the CR plus the CR itself
  std::vector<VariableId> presetCcList;      // central labeling result (empty under ISM)
};

class BoundedAgent : public Agent {
 public:
  BoundedAgent(const Problem& p, const PseudoTree& t, VariableId self, BoundedConfig cfg,
               NodeClusterView view, LabelingSink* sink);

  void start(Outbox& out) override;
  void receive(const Message& m, Outbox& out) override;
  std::optional<int> chosenValue() const override { return value_; }
  int peakDims() const override { return peakDims_; }
  std::optional<Cost> reportedOptimum() const override;

 private:
  // --- shared helpers ---
  bool isRoot() const { return tree_.parent[static_cast<std::size_t>(self_)] < 0; }
  VariableId parent() const { return tree_.parent[static_cast<std::size_t>(self_)]; }
  const std::vector<VariableId>& sep(VariableId v) const {
    return tree_.sep[static_cast<std::size_t>(v)];
  }
  void notePeak(int dims) { peakDims_ = std::max(peakDims_, dims); }
  void assertBounded(const UtilityTable& t) const;
  void onNormalUtil(const Message& m, Outbox& out);
  void maybeStartWork(Outbox& out);

  // --- normal-role (plain bottom-up/top-down propagation) ---
  void normalFinishUtil(Outbox& out);
  void normalOnValue(const Instantiation& ctx, Outbox& out);

  // --- labeling protocol ---
  bool active() const;
  void ismStartRoundIfLeaf(Outbox& out);
  void ismSendRound(Outbox& out);
  void ismOnSepInfo(const Message& m, Outbox& out);
  void ismOnAllocation(const AllocationPayload& a, Outbox& out);
  void ismOnLabelDone(Outbox& out);
  void crHandleRound(Outbox& out);
  void pruneEff(EffMap& eff) const;
  bool allocationRelevant(VariableId chosen) const;
  void finishLabeling(Outbox& out);

  // --- bounded sweeps (members) ---
  void enqueueSweep(MessageKind kind, const Instantiation& ins, Outbox& out);
  void tryProcessSweeps(Outbox& out);
  void beginSweep(Outbox& out);
  void dispatchToChildren(const Instantiation& ins, Outbox& out);
  bool sendOrReuse(VariableId child, const Instantiation& ins, Outbox& out);
  std::vector<std::pair<VariableId, int>> childKey(VariableId child, const Instantiation& ins) const;
  void onBoundedUtil(const Message& m, Outbox& out);
  void childArrived(VariableId child, const BoundedResult& r, Outbox& out);
  void finishValueStep(Outbox& out);
  BoundedResult computeJoint(const Instantiation& insFull);
  void memberFinishSweep(Outbox& out);
  void onValueMsg(const Instantiation& ctx, Outbox& out);
  void answerValue(Outbox& out);

  // --- cluster root enumeration ---
  void crStartEnumeration(Outbox& out);
  Instantiation insAt(std::int64_t idx) const;
  void crAdvanceChild(VariableId child, Outbox& out);
  void crRecordReply(std::int64_t idx, const BoundedResult& r, Outbox& out);
  void crFinishFold(std::int64_t idx, Outbox& out);
  void crMaybeFinishEnumeration(Outbox& out);
  void crBeginFinal(const Instantiation& ctx, Outbox& out);

  const Problem& p_;
  const PseudoTree& tree_;
  VariableId self_;
  BoundedConfig cfg_;
  NodeClusterView view_;
  LabelingSink* sink_;

  // Base table: constraints to parents joined with normal-child UTILs.
  std::vector<UtilityTable> localTables_;
  UtilityTable base_;
  int normalPending_ = 0;
  bool baseReady_ = false;
  std::set<VariableId> utilSeen_;

  // Labeling state.
  bool labelDone_ = false;
  std::vector<VariableId> ccList_;  // own list, append order
  std::set<VariableId> selected_;
  std::map<VariableId, SepInfoPayload> roundEff_;
  int rounds_ = 0;

  // Sweep state (members).
  std::deque<std::pair<MessageKind, Instantiation>> sweepQueue_;
  bool sweepBusy_ = false;
  MessageKind sweepKind_ = MessageKind::Instantiation_;
  Instantiation sweepIns_;       // as received
  Instantiation sweepInsFull_;   // with own augmentation when CC
  bool augmenting_ = false;
  int curValue_ = 0;
  std::set<VariableId> waitingChildren_;
  std::vector<std::pair<VariableId, BoundedResult>> arrivedResults_;
  BoundedResult accum_;          // min over own value (CC traversal)
  std::vector<int> accumOwnPlane_;
  bool accumValid_ = false;
  Instantiation lastFullIns_;    // instantiation of the last completed sweep
  ArgTable argTable_;
  bool haveArg_ = false;

  // Per-child reuse under distributed enumeration and the cache toggle: one
  // stored reply per distinct child-relevant projection of the instantiation.
  // The re-derivation wave instead compares against the last key actually
  // sent, because only that reply matches the child's retained argmin state.
  using ChildKey = std::vector<std::pair<VariableId, int>>;
  std::map<VariableId, std::map<ChildKey, BoundedResult>> replyCache_;
  std::map<VariableId, ChildKey> lastSentKey_;
  std::map<VariableId, ChildKey> sentKey_;

  // CR enumeration state.
  std::vector<VariableId> enumVars_;
  std::int64_t enumTotal_ = 1;
  std::map<VariableId, std::int64_t> nextIdx_;
  std::map<VariableId, std::int64_t> pendingIdx_;
  struct Fold {
    BoundedResult joined;
    int arrived = 0;
    bool any = false;
  };
  std::map<std::int64_t, Fold> folds_;
  std::int64_t foldedCount_ = 0;
  bool enumerationStarted_ = false;
  bool enumerationDone_ = false;
  std::vector<Dim> sepDims_;
  std::vector<Cost> bestCost_;
  std::vector<Instantiation> bestIns_;
  std::vector<int> bestCrVal_;
  bool finalPhase_ = false;
  Instantiation finalIns_;

  std::optional<Instantiation> bufferedValueCtx_;
  std::optional<int> value_;
  Cost optimum_ = 0;
  int peakDims_ = 0;
};

/// Harness shared by the MB-DPOP and RMB-DPOP entry points.
SolveResult runBounded(const Problem& p, const PseudoTree& tree, int k, BoundedConfig cfg,
                       CcHeuristic heuristic, const RunOptions& opts, const char* label);

}  // namespace dcop::detail
