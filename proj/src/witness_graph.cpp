#include "crncex/witness_graph.hpp"

#include <algorithm>

#include "crncex/errors.hpp"

namespace crncex {

WitnessCtmc::WitnessCtmc(Crn crn) : crn_(std::move(crn)) {
  bool changed = false;
  intern(crn_.initial(), changed);
}

std::optional<NodeId> WitnessCtmc::find(const State& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId WitnessCtmc::intern(const State& s, bool& changed) {
  if (auto id = find(s)) return *id;
  const NodeId id = states_.size();
  states_.push_back(s);
  index_.emplace(s, id);
  successors_.emplace_back();
  sink_.emplace_back();
  refresh_sink(id);
  changed = true;
  return id;
}

void WitnessCtmc::refresh_sink(NodeId id) {
  const State& x = states_[id];
  SinkEdge sink;
  for (ReactionIndex r = 0; r < crn_.reaction_count(); ++r) {
    const Reaction& reaction = crn_.reaction(r);
    if (reaction.is_identity() || !enabled(x, reaction)) continue;
    auto to = find(fire(x, reaction));
    const auto& succ = successors_[id];
    if (to && std::find(succ.begin(), succ.end(), *to) != succ.end()) continue;
    sink.rate += propensity(x, reaction);
    sink.reactions.push_back(r);
  }
  sink_[id] = std::move(sink);
}

std::size_t WitnessCtmc::sink_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(sink_.begin(), sink_.end(), [](const SinkEdge& e) { return e.rate > 0.0; }));
}

std::size_t WitnessCtmc::size() const {
  const std::size_t sink_edges = sink_edge_count();
  return node_count() + edge_count() + (sink_edges > 0 ? 1 + sink_edges : 0);
}

bool WitnessCtmc::add_trace(const Witness& w) {
  validate_trace(w, crn_);
  if (!find(w.front())) {
    throw ContractError("trace starts on a state that is not in the witness CTMC");
  }
  bool changed = false;
  NodeId prev = intern(w.states.front(), changed);
  for (std::size_t i = 1; i < w.states.size(); ++i) {
    const NodeId next = intern(w.states[i], changed);
    if (prev != next && !edges_.contains({prev, next})) {
      Edge edge;
      const State& from = states_[prev];
      for (ReactionIndex r = 0; r < crn_.reaction_count(); ++r) {
        const Reaction& reaction = crn_.reaction(r);
        if (reaction.is_identity() || !enabled(from, reaction)) continue;
        if (fire(from, reaction) == w.states[i]) {
          edge.rate += propensity(from, reaction);
          edge.reactions.push_back(r);
        }
      }
      edges_.emplace(std::make_pair(prev, next), std::move(edge));
      successors_[prev].push_back(next);
      refresh_sink(prev);
      changed = true;
    }
    prev = next;
  }
  return changed;
}

bool WitnessCtmc::add_witness(const Witness& w) {
  if (w.states.empty() || w.front() != crn_.initial()) {
    throw ContractError("a witness must start at the initial state");
  }
  return add_trace(w);
}

void WitnessCtmc::complete_sink() {
  for (NodeId id = 0; id < states_.size(); ++id) refresh_sink(id);
}

EdgeSet WitnessCtmc::edge_states() const {
  EdgeSet out;
  for (const auto& [key, edge] : edges_) out.emplace(states_[key.first], states_[key.second]);
  return out;
}

FiniteCtmc WitnessCtmc::to_finite_ctmc(const Property& prop) const {
  const auto n = static_cast<FiniteCtmc::Index>(states_.size());
  std::vector<FiniteCtmc::Triplet> rates;
  rates.reserve(edges_.size() + states_.size());
  for (const auto& [key, edge] : edges_) {
    rates.emplace_back(static_cast<FiniteCtmc::Index>(key.first),
                       static_cast<FiniteCtmc::Index>(key.second), edge.rate);
  }
  for (NodeId id = 0; id < states_.size(); ++id) {
    if (sink_[id].rate > 0.0) rates.emplace_back(static_cast<FiniteCtmc::Index>(id), n, sink_[id].rate);
  }
  std::vector<bool> target(states_.size() + 1, false);
  for (NodeId id = 0; id < states_.size(); ++id) target[id] = prop.is_target(states_[id]);
  return FiniteCtmc(n + 1, rates, static_cast<FiniteCtmc::Index>(initial()), std::move(target));
}

}  // namespace crncex
