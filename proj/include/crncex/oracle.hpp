#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "crncex/crn.hpp"
#include "crncex/transient.hpp"
#include "crncex/witness.hpp"

namespace crncex {

/// Loop-free witnesses of a fixed length, keyed by their state sequence.
using PathSet = std::set<std::vector<State>>;

/// Exhaustive depth-first enumeration of loop-free paths of exactly k transitions from the
/// initial state to a state with target_species == target_value. Throws ResourceError once more
/// than `max_visits` partial paths have been expanded.
PathSet enumerate_witnesses(const Crn& crn, const Property& prop, std::uint32_t k,
                            std::size_t max_visits = 10'000'000);

/// Time-bounded reachability by a dense matrix exponential of the target-absorbed generator.
/// Independent of the uniformization path; limited to `max_states` states.
double expm_reach_probability(const FiniteCtmc& ctmc, double time_bound,
                              std::size_t max_states = 200);

/// Breadth-first exploration of the CRN state space with every population capped at `cap`
/// (transitions leaving the box are dropped) and target states left unexpanded.
/// Throws ResourceError beyond `max_states` states.
FiniteCtmc explore_bounded(const Crn& crn, const Property& prop, Population cap,
                           std::size_t max_states = 1'000'000);

}  // namespace crncex
