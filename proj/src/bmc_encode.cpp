#include "crncex/bmc_encode.hpp"

#include <map>

#include <fmt/format.h>

#include "crncex/errors.hpp"

namespace crncex {

Var UnrollContext::var(std::uint32_t step, SpeciesIndex species) const {
  if (step > bound_ || species >= crn_->species_count()) {
    throw ContractError(fmt::format("variable v{}_{} outside unrolling of bound {} over {} species",
                                    step, species, bound_, crn_->species_count()));
  }
  return Var{step, static_cast<std::uint32_t>(species)};
}

std::vector<Var> UnrollContext::state_vars() const {
  std::vector<Var> vars;
  vars.reserve((bound_ + 1) * species_count());
  for (std::uint32_t k = 0; k <= bound_; ++k) {
    for (SpeciesIndex s = 0; s < species_count(); ++s) vars.push_back(var(k, s));
  }
  return vars;
}

Formula encode_state(const UnrollContext& ctx, std::uint32_t step, const State& state) {
  if (state.size() != ctx.species_count()) {
    throw ContractError("state length does not match the CRN");
  }
  std::vector<Formula> parts;
  parts.reserve(state.size());
  for (SpeciesIndex s = 0; s < state.size(); ++s) parts.push_back(eq(ctx.var(step, s), state[s]));
  return Formula::all(std::move(parts));
}

Formula encode_initial(const UnrollContext& ctx, const State& state) {
  return encode_state(ctx, 0, state);
}

Formula encode_step(const UnrollContext& ctx, std::uint32_t step) {
  if (step < 1 || step > ctx.bound()) {
    throw ContractError(fmt::format("step {} outside 1..{}", step, ctx.bound()));
  }
  const Crn& crn = ctx.crn();
  std::vector<Formula> disjuncts;
  disjuncts.reserve(crn.reaction_count());
  for (const Reaction& r : crn.reactions()) {
    // Reactions that leave the state unchanged are not CTMC transitions.
    if (r.is_identity()) continue;
    std::vector<Formula> parts;
    for (SpeciesIndex s : r.reactants) parts.push_back(gt(ctx.var(step - 1, s), 0));
    for (SpeciesIndex s = 0; s < crn.species_count(); ++s) {
      // delta covers Ra-Pd (-1), Pd-Ra (+1), Ra&Pd and species outside the reaction (0).
      parts.push_back(eq(ctx.var(step, s), ctx.var(step - 1, s), r.delta(s)));
    }
    disjuncts.push_back(Formula::all(std::move(parts)));
  }
  return Formula::any(std::move(disjuncts));
}

Formula encode_nonnegative(const UnrollContext& ctx) {
  std::vector<Formula> parts;
  for (const Var& v : ctx.state_vars()) parts.push_back(ge(v, 0));
  return Formula::all(std::move(parts));
}

Formula encode_loop_free(const UnrollContext& ctx) {
  std::vector<Formula> pairs;
  for (std::uint32_t h = 1; h <= ctx.bound(); ++h) {
    for (std::uint32_t j = 0; j < h; ++j) {
      std::vector<Formula> differ;
      for (SpeciesIndex s = 0; s < ctx.species_count(); ++s) {
        differ.push_back(ne(ctx.var(h, s), ctx.var(j, s)));
      }
      pairs.push_back(Formula::any(std::move(differ)));
    }
  }
  return Formula::all(std::move(pairs));
}

Formula encode_target(const UnrollContext& ctx, SpeciesIndex species, Population value) {
  return eq(ctx.var(ctx.bound(), species), value);
}

Formula encode_target(const UnrollContext& ctx, const Property& prop) {
  return encode_target(ctx, prop.target_species, prop.target_value);
}

Formula encode_bmc(const UnrollContext& ctx, const State& start, SpeciesIndex species,
                   Population value) {
  std::vector<Formula> parts;
  parts.push_back(encode_initial(ctx, start));
  for (std::uint32_t i = 1; i <= ctx.bound(); ++i) parts.push_back(encode_step(ctx, i));
  parts.push_back(encode_nonnegative(ctx));
  parts.push_back(encode_loop_free(ctx));
  parts.push_back(encode_target(ctx, species, value));
  return Formula::all(std::move(parts));
}

Formula encode_bmc(const UnrollContext& ctx, const Property& prop) {
  return encode_bmc(ctx, ctx.crn().initial(), prop.target_species, prop.target_value);
}

Formula encode_bmc(const Crn& crn, const Property& prop, std::uint32_t k) {
  return encode_bmc(UnrollContext(crn, k), prop);
}

Formula encode_exclusion(const UnrollContext& ctx, const Witness& w) {
  if (w.length() != ctx.bound()) {
    throw ContractError(fmt::format("excluding a trace of length {} at bound {}", w.length(),
                                    ctx.bound()));
  }
  std::vector<Formula> fixed;
  for (std::uint32_t k = 0; k <= ctx.bound(); ++k) fixed.push_back(encode_state(ctx, k, w.states[k]));
  return !Formula::all(std::move(fixed));
}

Formula encode_scaffold_frame(const UnrollContext& ctx, const ScaffoldSpec& spec) {
  const std::uint32_t j = ctx.bound();
  if (j < 1) throw ContractError("scaffold fragments need at least one step");

  std::vector<Formula> starts;
  for (const State& x : spec.sources) starts.push_back(encode_state(ctx, 0, x));

  std::vector<Formula> ends;
  for (const State& x : spec.recorded) ends.push_back(encode_state(ctx, j, x));
  ends.push_back(encode_target(ctx, spec.target_species, spec.target_value));

  std::vector<Formula> parts;
  parts.push_back(Formula::any(std::move(starts)));
  for (std::uint32_t i = 1; i <= j; ++i) parts.push_back(encode_step(ctx, i));
  parts.push_back(encode_nonnegative(ctx));
  for (std::uint32_t i = 0; i < j; ++i) {
    parts.push_back(ne(ctx.var(i, spec.target_species), spec.target_value));
  }
  parts.push_back(Formula::any(std::move(ends)));
  return Formula::all(std::move(parts));
}

Formula encode_newness(const UnrollContext& ctx, const EdgeSet& recorded_edges) {
  // Group successors by source so each step reads (v[i-1]=a /\ (v[i]=b1 \/ v[i]=b2 ...)).
  std::map<State, std::vector<const State*>> by_source;
  for (const auto& [from, to] : recorded_edges) by_source[from].push_back(&to);

  std::vector<Formula> fresh_steps;
  for (std::uint32_t i = 1; i <= ctx.bound(); ++i) {
    std::vector<Formula> known;
    for (const auto& [from, tos] : by_source) {
      std::vector<Formula> targets;
      for (const State* to : tos) targets.push_back(encode_state(ctx, i, *to));
      known.push_back(encode_state(ctx, i - 1, from) && Formula::any(std::move(targets)));
    }
    fresh_steps.push_back(!Formula::any(std::move(known)));
  }
  return Formula::any(std::move(fresh_steps));
}

Formula encode_scaffold(const UnrollContext& ctx, const ScaffoldSpec& spec,
                        const EdgeSet& recorded_edges) {
  return encode_scaffold_frame(ctx, spec) && encode_newness(ctx, recorded_edges);
}

}  // namespace crncex
