#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "crncex/crn.hpp"
#include "crncex/formula.hpp"
#include "crncex/witness.hpp"

namespace crncex {

/// Unrolling of a CRN to `bound` transitions: variables v[0..bound][0..N-1].
/// Holds a reference to the CRN, which must outlive the context.
class UnrollContext {
 public:
  UnrollContext(const Crn& crn, std::uint32_t bound) : crn_(&crn), bound_(bound) {}

  const Crn& crn() const { return *crn_; }
  std::uint32_t bound() const { return bound_; }
  std::size_t species_count() const { return crn_->species_count(); }

  /// Throws ContractError when step > bound or species >= N.
  Var var(std::uint32_t step, SpeciesIndex species) const;
  /// All (bound+1)*N state variables, step-major.
  std::vector<Var> state_vars() const;

 private:
  const Crn* crn_;
  std::uint32_t bound_;
};

using EdgeSet = std::set<std::pair<State, State>>;

/// Step variables equal to the given state.
Formula encode_state(const UnrollContext& ctx, std::uint32_t step, const State& state);

Formula encode_initial(const UnrollContext& ctx, const State& state);

/// Disjunction over reactions of the transition relation between step-1 and step.
Formula encode_step(const UnrollContext& ctx, std::uint32_t step);

/// v >= 0 for every state variable.
Formula encode_nonnegative(const UnrollContext& ctx);

/// Negated loop constraint: the bound+1 states are pairwise distinct.
Formula encode_loop_free(const UnrollContext& ctx);

Formula encode_target(const UnrollContext& ctx, const Property& prop);
Formula encode_target(const UnrollContext& ctx, SpeciesIndex species, Population value);

/// initial /\ steps 1..k /\ loop-free /\ target, plus non-negativity.
Formula encode_bmc(const UnrollContext& ctx, const Property& prop);
/// Same encoding from an arbitrary start state towards `species == value`.
Formula encode_bmc(const UnrollContext& ctx, const State& start, SpeciesIndex species,
                   Population value);
Formula encode_bmc(const Crn& crn, const Property& prop, std::uint32_t k);

/// Blocks exactly the state sequence of `w` (w.length() must equal the bound).
Formula encode_exclusion(const UnrollContext& ctx, const Witness& w);

/// Sources, recorded states and the target predicate for scaffold fragment search.
struct ScaffoldSpec {
  std::vector<State> sources;
  std::vector<State> recorded;
  SpeciesIndex target_species = 0;
  Population target_value = 0;
};

/// Fragments of exactly `bound` steps from a source to a recorded or target state. States before
/// the last step must not be targets. No loop-freedom is imposed.
Formula encode_scaffold_frame(const UnrollContext& ctx, const ScaffoldSpec& spec);

/// Some step of the trace is not one of `recorded_edges`.
Formula encode_newness(const UnrollContext& ctx, const EdgeSet& recorded_edges);

Formula encode_scaffold(const UnrollContext& ctx, const ScaffoldSpec& spec,
                        const EdgeSet& recorded_edges);

}  // namespace crncex
