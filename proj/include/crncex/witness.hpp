#pragma once

#include <string>
#include <vector>

#include "crncex/crn.hpp"

namespace crncex {

/// Alternating sequence of states and reactions; states.size() == reactions.size() + 1.
/// Used both for full witnesses (starting at the initial state and ending on a target) and for
/// scaffold fragments (starting and ending on recorded states).
struct Witness {
  std::vector<State> states;
  std::vector<ReactionIndex> reactions;

  std::size_t length() const { return reactions.size(); }
  const State& front() const { return states.front(); }
  const State& back() const { return states.back(); }
  std::string to_string() const;

  bool operator==(const Witness&) const = default;
};

/// Lowest-index reaction whose firing maps `from` to `to`, if any. Identity reactions are
/// considered only when from == to.
std::optional<ReactionIndex> explaining_reaction(const Crn& crn, const State& from, const State& to);

/// Throws EncodingError unless every step is the firing of the recorded reaction.
void validate_trace(const Witness& w, const Crn& crn);

/// True iff all states are pairwise distinct.
bool is_loop_free(const Witness& w);

/// Appends `tail` to `head`; tail must start where head ends.
Witness concatenate(const Witness& head, const Witness& tail);

}  // namespace crncex
