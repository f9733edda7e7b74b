#include "dcop/runtime.hpp"

#include <chrono>
#include <deque>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace dcop {

const char* kindName(MessageKind k) {
  switch (k) {
    case MessageKind::Util: return "UTIL";
    case MessageKind::Value: return "VALUE";
    case MessageKind::SepInfo: return "SEP_INFO";
    case MessageKind::Allocation: return "ALLOCATION";
    case MessageKind::LabelDone: return "LABEL_DONE";
    case MessageKind::Instantiation_: return "INSTANTIATION";
    case MessageKind::BoundedUtil: return "BOUNDED_UTIL";
    case MessageKind::FinalContext: return "FINAL_CONTEXT";
  }
  return "?";
}

int EffMap::countOf(VariableId v) const {
  for (const auto& [var, c] : counts)
    if (var == v) return c;
  return 0;
}

void EffMap::add(VariableId v, int delta) {
  for (auto& [var, c] : counts) {
    if (var == v) {
      c += delta;
      return;
    }
  }
  counts.emplace_back(v, delta);
}

std::int64_t messageSize(const Message& m) {
  std::int64_t payload = 0;
  switch (m.kind) {
    case MessageKind::Util:
      payload = static_cast<std::int64_t>(std::get<UtilityTable>(m.payload).cellCount());
      break;
    case MessageKind::BoundedUtil:
      payload = static_cast<std::int64_t>(std::get<BoundedResult>(m.payload).table.cellCount());
      break;
    case MessageKind::Value:
    case MessageKind::Instantiation_:
    case MessageKind::FinalContext:
      payload = static_cast<std::int64_t>(std::get<Instantiation>(m.payload).entries.size());
      break;
    case MessageKind::SepInfo:
      payload = static_cast<std::int64_t>(std::get<SepInfoPayload>(m.payload).eff.counts.size()) + 1;
      break;
    case MessageKind::Allocation:
    case MessageKind::LabelDone:
      payload = 1;
      break;
  }
  return payload + 1;  // header unit
}

std::string payloadSummary(const Message& m) {
  std::ostringstream os;
  switch (m.kind) {
    case MessageKind::Util: {
      const auto& t = std::get<UtilityTable>(m.payload);
      os << "dims={";
      for (std::size_t i = 0; i < t.dims().size(); ++i) os << (i ? "," : "") << t.dims()[i].var;
      os << "}";
      break;
    }
    case MessageKind::BoundedUtil: {
      const auto& t = std::get<BoundedResult>(m.payload).table;
      os << "dims={";
      for (std::size_t i = 0; i < t.dims().size(); ++i) os << (i ? "," : "") << t.dims()[i].var;
      os << "}";
      break;
    }
    case MessageKind::Value:
    case MessageKind::Instantiation_:
    case MessageKind::FinalContext: {
      const auto& ins = std::get<Instantiation>(m.payload);
      os << "{";
      for (std::size_t i = 0; i < ins.entries.size(); ++i)
        os << (i ? "," : "") << ins.entries[i].first << "=" << ins.entries[i].second;
      os << "}";
      break;
    }
    case MessageKind::SepInfo: {
      const auto& s = std::get<SepInfoPayload>(m.payload);
      os << "eff={";
      for (std::size_t i = 0; i < s.eff.counts.size(); ++i)
        os << (i ? "," : "") << s.eff.counts[i].first << ":" << s.eff.counts[i].second;
      os << "} active=" << (s.anyActive ? 1 : 0);
      break;
    }
    case MessageKind::Allocation:
      os << "chosen=" << std::get<AllocationPayload>(m.payload).chosen;
      break;
    case MessageKind::LabelDone:
      os << "-";
      break;
  }
  return os.str();
}

std::int64_t Metrics::total() const {
  std::int64_t t = 0;
  for (auto c : msgCount) t += c;
  return t;
}

void Outbox::send(VariableId src, VariableId dst, MessageKind kind, MessagePayload payload) {
  Message m;
  m.src = src;
  m.dst = dst;
  m.kind = kind;
  m.payload = std::move(payload);
  messages_.push_back(std::move(m));
}

SolveResult run(const Problem& p, const PseudoTree& tree, const AgentFactory& factory,
                const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult result;
  result.metrics.receivedByAgent.assign(static_cast<std::size_t>(p.n), {});

  std::vector<std::unique_ptr<Agent>> agents;
  agents.reserve(static_cast<std::size_t>(p.n));
  for (VariableId v = 0; v < p.n; ++v) agents.push_back(factory(v));

  // fifo delivers in global arrival order; random picks a channel uniformly
  // but never reorders within one, so per-(src,dst) order always holds.
  std::deque<Message> fifoQueue;
  std::map<std::pair<VariableId, VariableId>, std::deque<Message>> channels;
  std::int64_t queued = 0;
  auto enqueue = [&](std::vector<Message>& msgs) {
    for (auto& m : msgs) {
      if (m.dst < 0 || m.dst >= p.n || m.src < 0 || m.src >= p.n)
        throw ProtocolError("message endpoint out of range");
      if (opts.schedule == Schedule::Fifo)
        fifoQueue.push_back(std::move(m));
      else
        channels[{m.src, m.dst}].push_back(std::move(m));
      ++queued;
    }
    msgs.clear();
  };

  std::mt19937_64 rng(opts.scheduleSeed);
  Outbox out;
  for (VariableId v = 0; v < p.n; ++v) {
    agents[static_cast<std::size_t>(v)]->start(out);
    enqueue(out.messages());
  }

  std::int64_t step = 0;
  bool timedOut = false;
  while (queued > 0) {
    if (opts.timeoutSec > 0.0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      if (dt.count() > opts.timeoutSec) {
        timedOut = true;
        break;
      }
    }
    Message m;
    if (opts.schedule == Schedule::Fifo) {
      m = std::move(fifoQueue.front());
      fifoQueue.pop_front();
    } else {
      auto it = channels.begin();
      if (channels.size() > 1)
        std::advance(it, static_cast<long>(rng() % channels.size()));
      m = std::move(it->second.front());
      it->second.pop_front();
      if (it->second.empty()) channels.erase(it);
    }
    --queued;

    ++step;
    const auto size = messageSize(m);
    result.metrics.msgCount[static_cast<std::size_t>(m.kind)]++;
    result.metrics.networkLoad += size;
    result.metrics.receivedByAgent[static_cast<std::size_t>(m.dst)][static_cast<std::size_t>(m.kind)]++;
    if (opts.trace)
      (*opts.trace) << step << " " << kindName(m.kind) << " " << m.src << "->" << m.dst << " "
                    << size << " " << payloadSummary(m) << "\n";
    if (opts.observer) opts.observer(MessageEvent{step, m});

    try {
      agents[static_cast<std::size_t>(m.dst)]->receive(m, out);
    } catch (const ProtocolError& e) {
      throw ProtocolError(std::string(e.what()) + " [while agent " + std::to_string(m.dst) +
                          " handled " + kindName(m.kind) + " from " + std::to_string(m.src) + "]");
    }
    enqueue(out.messages());
  }

  const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
  result.metrics.elapsedMs = dt.count();
  for (VariableId v = 0; v < p.n; ++v)
    result.metrics.peakTableDims =
        std::max(result.metrics.peakTableDims, agents[static_cast<std::size_t>(v)]->peakDims());

  if (timedOut) {
    result.status = RunStatus::Timeout;
    return result;
  }

  result.assignment = Assignment(p.n);
  for (VariableId v = 0; v < p.n; ++v) {
    auto val = agents[static_cast<std::size_t>(v)]->chosenValue();
    if (!val) throw ProtocolError("agent " + std::to_string(v) + " terminated without a value");
    result.assignment[v] = *val;
  }
  result.cost = totalCost(p, result.assignment);
  if (auto opt = agents[static_cast<std::size_t>(tree.root)]->reportedOptimum())
    result.reportedOptimum = *opt;
  return result;
}

}  // namespace dcop
