#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crncex/bmc_encode.hpp"
#include "crncex/crn.hpp"
#include "crncex/transient.hpp"
#include "crncex/witness.hpp"

namespace crncex {

using NodeId = std::size_t;

/// Overlay of witness traces as a sub-CTMC of the CRN. Every node carries edges to its recorded
/// successors (rate = summed propensity of all reactions leading there) and one aggregated edge to
/// a unique absorbing sink for the enabled reactions whose successors are not recorded. The sink
/// rates are kept up to date as traces are added, so the rate-conservation invariant holds after
/// every mutation.
class WitnessCtmc {
 public:
  static constexpr NodeId kSink = std::numeric_limits<NodeId>::max();

  struct Edge {
    double rate = 0.0;
    std::vector<ReactionIndex> reactions;
  };

  struct SinkEdge {
    double rate = 0.0;
    std::vector<ReactionIndex> reactions;
  };

  WitnessCtmc() : WitnessCtmc(Crn{}) {}
  /// Graph holding only the CRN's initial state.
  explicit WitnessCtmc(Crn crn);

  const Crn& crn() const { return crn_; }
  NodeId initial() const { return 0; }

  std::size_t node_count() const { return states_.size(); }
  /// Edges between real nodes (sink edges excluded).
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t sink_edge_count() const;
  /// Nodes + edges, counting the sink node and its incoming edges when any exist.
  std::size_t size() const;
  /// Nodes + real edges; the growth measure used to schedule probability evaluations.
  std::size_t real_size() const { return node_count() + edge_count(); }

  const State& state(NodeId id) const { return states_.at(id); }
  const std::vector<State>& states() const { return states_; }
  std::optional<NodeId> find(const State& s) const;
  const std::map<std::pair<NodeId, NodeId>, Edge>& edges() const { return edges_; }
  const SinkEdge& sink_edge(NodeId id) const { return sink_.at(id); }

  /// Adds all states and transitions of a validated trace. Returns true if the graph changed.
  /// The trace must start on a recorded state.
  bool add_trace(const Witness& w);
  /// A full witness must start at the initial state.
  bool add_witness(const Witness& w);

  /// Recomputes every sink edge from scratch. add_trace keeps them current; this is idempotent.
  void complete_sink();

  /// Recorded edges as state pairs, for scaffold newness constraints.
  EdgeSet edge_states() const;

  /// Sub-CTMC with node ids 0..n-1 and the sink at index n; targets marked per `prop`.
  FiniteCtmc to_finite_ctmc(const Property& prop) const;

 private:
  NodeId intern(const State& s, bool& changed);
  void refresh_sink(NodeId id);

  Crn crn_;
  std::vector<State> states_;
  std::unordered_map<State, NodeId, StateHash> index_;
  std::map<std::pair<NodeId, NodeId>, Edge> edges_;
  std::vector<std::vector<NodeId>> successors_;
  std::vector<SinkEdge> sink_;
};

/// Free-function forms.
inline bool add_witness(WitnessCtmc& g, const Witness& w) { return g.add_witness(w); }
inline void complete_sink(WitnessCtmc& g) { g.complete_sink(); }

std::string export_dot(const WitnessCtmc& g, const Property& prop);
std::string export_json(const WitnessCtmc& g, const Property& prop);
std::string export_prism(const WitnessCtmc& g, const Property& prop);

}  // namespace crncex
