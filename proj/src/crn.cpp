#include "crncex/crn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "crncex/errors.hpp"

namespace crncex {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(fmt::format("{}:{}: {}", line, column, message)), line_(line), column_(column) {}

namespace {

void normalize_side(std::vector<SpeciesIndex>& side, const char* which) {
  std::sort(side.begin(), side.end());
  if (std::adjacent_find(side.begin(), side.end()) != side.end()) {
    throw ContractError(fmt::format("species repeated among {}; only unit stoichiometry is supported",
                                    which));
  }
}

}  // namespace

Reaction::Reaction(std::vector<SpeciesIndex> reactants_in, std::vector<SpeciesIndex> products_in,
                   double rate)
    : reactants(std::move(reactants_in)), products(std::move(products_in)), rate_constant(rate) {
  if (!(rate_constant > 0.0) || !std::isfinite(rate_constant)) {
    throw ContractError(fmt::format("reaction rate must be positive, got {}", rate_constant));
  }
  normalize_side(reactants, "reactants");
  normalize_side(products, "products");
}

bool Reaction::consumes(SpeciesIndex s) const {
  return std::binary_search(reactants.begin(), reactants.end(), s);
}

bool Reaction::produces(SpeciesIndex s) const {
  return std::binary_search(products.begin(), products.end(), s);
}

int Reaction::delta(SpeciesIndex s) const {
  return (produces(s) ? 1 : 0) - (consumes(s) ? 1 : 0);
}

State::State(std::vector<Population> populations) : populations_(std::move(populations)) {
  for (Population p : populations_) {
    if (p < 0) {
      throw ContractError(fmt::format("negative population {} in state", p));
    }
  }
}

std::string State::to_string() const { return fmt::format("[{}]", fmt::join(populations_, ",")); }

std::size_t StateHash::operator()(const State& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Population p : s.populations()) {
    h ^= std::hash<Population>{}(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Crn::Crn(std::vector<Species> species, std::vector<Reaction> reactions, State initial)
    : species_(std::move(species)), reactions_(std::move(reactions)), initial_(std::move(initial)) {
  if (initial_.size() != species_.size()) {
    throw ContractError(fmt::format("initial state has {} entries for {} species", initial_.size(),
                                    species_.size()));
  }
  for (std::size_t i = 0; i < species_.size(); ++i) {
    if (species_[i].index != i) {
      throw ContractError(fmt::format("species '{}' has index {}, expected {}", species_[i].name,
                                      species_[i].index, i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (species_[j].name == species_[i].name) {
        throw ContractError(fmt::format("duplicate species '{}'", species_[i].name));
      }
    }
  }
  for (const Reaction& r : reactions_) {
    for (const auto* side : {&r.reactants, &r.products}) {
      for (SpeciesIndex s : *side) {
        if (s >= species_.size()) {
          throw ContractError(fmt::format("reaction refers to species index {} of {}", s,
                                          species_.size()));
        }
      }
    }
  }
}

std::optional<SpeciesIndex> Crn::find_species(std::string_view name) const {
  for (const Species& s : species_) {
    if (s.name == name) return s.index;
  }
  return std::nullopt;
}

SpeciesIndex Crn::species_index(std::string_view name) const {
  if (auto idx = find_species(name)) return *idx;
  throw ContractError(fmt::format("unknown species '{}'", name));
}

Property::Property(double threshold_in, double time_bound_in, SpeciesIndex species,
                   Population value)
    : threshold(threshold_in), time_bound(time_bound_in), target_species(species),
      target_value(value) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw ContractError(fmt::format("probability threshold must lie in (0,1], got {}", threshold));
  }
  if (!(time_bound > 0.0) || !std::isfinite(time_bound)) {
    throw ContractError(fmt::format("time bound must be positive, got {}", time_bound));
  }
  if (target_value < 0) {
    throw ContractError(fmt::format("target population must be non-negative, got {}", value));
  }
}

bool enabled(const State& state, const Reaction& reaction) {
  return std::all_of(reaction.reactants.begin(), reaction.reactants.end(),
                     [&](SpeciesIndex s) { return state[s] > 0; });
}

State fire(const State& state, const Reaction& reaction) {
  if (!enabled(state, reaction)) {
    throw ContractError(fmt::format("reaction fired in state {} where it is disabled",
                                    state.to_string()));
  }
  std::vector<Population> next = state.vector();
  for (SpeciesIndex s : reaction.reactants) {
    if (!reaction.produces(s)) --next[s];
  }
  for (SpeciesIndex s : reaction.products) {
    if (reaction.consumes(s)) continue;
    if (next[s] == std::numeric_limits<Population>::max()) {
      throw ResourceError(fmt::format("population overflow of species {}", s));
    }
    ++next[s];
  }
  return State(std::move(next));
}

double propensity(const State& state, const Reaction& reaction) {
  if (!enabled(state, reaction)) {
    throw ContractError(fmt::format("propensity of a disabled reaction in state {}",
                                    state.to_string()));
  }
  double rate = reaction.rate_constant;
  for (SpeciesIndex s : reaction.reactants) rate *= static_cast<double>(state[s]);
  return rate;
}

std::vector<Transition> successors(const State& state, const Crn& crn) {
  std::vector<Transition> out;
  for (ReactionIndex i = 0; i < crn.reaction_count(); ++i) {
    const Reaction& r = crn.reaction(i);
    if (!enabled(state, r)) continue;
    out.push_back({i, propensity(state, r), fire(state, r)});
  }
  return out;
}

double exit_rate(const State& state, const Crn& crn) {
  double total = 0.0;
  for (const Reaction& r : crn.reactions()) {
    if (!r.is_identity() && enabled(state, r)) total += propensity(state, r);
  }
  return total;
}

}  // namespace crncex
