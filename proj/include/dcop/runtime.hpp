#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dcop/model.hpp"
#include "dcop/pseudotree.hpp"
#include "dcop/tables.hpp"

namespace dcop {

enum class MessageKind : int {
  Util = 0,
  Value,
  SepInfo,
  Allocation,
  LabelDone,
  Instantiation_,
  BoundedUtil,
  FinalContext,
};
inline constexpr int kMessageKinds = 8;
const char* kindName(MessageKind k);

/// Candidate -> effectiveness count, insertion-ordered. Order matters: the
/// pruning rule keeps ties deterministic and the trace prints map order.
struct EffMap {
  std::vector<std::pair<VariableId, int>> counts;

  int countOf(VariableId v) const;
  void add(VariableId v, int delta);  // inserts at the back when absent
  bool empty() const { return counts.empty(); }
};

struct SepInfoPayload {
  EffMap eff;
  bool anyActive = false;
};

struct AllocationPayload {
  VariableId chosen = -1;
};

using MessagePayload = std::variant<std::monostate, UtilityTable, BoundedResult, Instantiation,
                                    SepInfoPayload, AllocationPayload>;

struct Message {
  VariableId src = -1;
  VariableId dst = -1;
  MessageKind kind = MessageKind::Util;
  MessagePayload payload;
};

/// Abstract size units: payload measure plus one header unit.
std::int64_t messageSize(const Message& m);
std::string payloadSummary(const Message& m);

struct Metrics {
  std::array<std::int64_t, kMessageKinds> msgCount{};
  std::int64_t networkLoad = 0;
  double elapsedMs = 0.0;
  int peakTableDims = 0;
  std::vector<std::array<std::int64_t, kMessageKinds>> receivedByAgent;

  std::int64_t total() const;
  std::int64_t count(MessageKind k) const { return msgCount[static_cast<std::size_t>(k)]; }
  std::int64_t received(VariableId v, MessageKind k) const {
    return receivedByAgent[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
  }
};

enum class RunStatus { Ok, Timeout, WidthExceeded };

struct ClusterSummary {
  VariableId cr = -1;
  std::vector<VariableId> members;
  std::vector<VariableId> ccOut;
  std::vector<VariableId> ccIn;
};

struct SolveResult {
  RunStatus status = RunStatus::Ok;
  Assignment assignment;
  Cost cost = 0;
  Cost reportedOptimum = 0;  // scalar computed at the root
  Metrics metrics;
  std::string algoLabel;
  // Labeling introspection for tests and trace dumps.
  std::vector<std::pair<VariableId, std::vector<VariableId>>> ccLists;
  std::vector<VariableId> selectionOrder;
  std::vector<int> selectionCounts;
  std::vector<ClusterSummary> clusters;
};

class Outbox {
 public:
  void send(VariableId src, VariableId dst, MessageKind kind, MessagePayload payload);
  std::vector<Message>& messages() { return messages_; }

 private:
  std::vector<Message> messages_;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual void start(Outbox& out) = 0;
  virtual void receive(const Message& m, Outbox& out) = 0;
  virtual std::optional<int> chosenValue() const = 0;
  virtual int peakDims() const { return 0; }
  virtual std::optional<Cost> reportedOptimum() const { return std::nullopt; }
};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Schedule { Fifo, Random };

struct MessageEvent {
  std::int64_t step;
  Message msg;
};
using MessageObserver = std::function<void(const MessageEvent&)>;

struct RunOptions {
  Schedule schedule = Schedule::Fifo;
  std::uint64_t scheduleSeed = 0;
  double timeoutSec = 0.0;  // 0 = no timeout
  std::ostream* trace = nullptr;
  MessageObserver observer;
};

using AgentFactory = std::function<std::unique_ptr<Agent>(VariableId)>;

/// Delivers messages one at a time per schedule until quiescence, preserving
/// per-(src,dst) order. Deterministic for fifo and for random with a fixed
/// seed.
SolveResult run(const Problem& p, const PseudoTree& tree, const AgentFactory& factory,
                const RunOptions& opts);

}  // namespace dcop
