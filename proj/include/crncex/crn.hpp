#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crncex {

using Population = std::int64_t;
using SpeciesIndex = std::size_t;
using ReactionIndex = std::size_t;

struct Species {
  std::string name;
  SpeciesIndex index = 0;

  bool operator==(const Species&) const = default;
};

/// Unit-stoichiometry reaction: each species appears at most once per side.
struct Reaction {
  std::vector<SpeciesIndex> reactants;  // sorted, unique
  std::vector<SpeciesIndex> products;   // sorted, unique
  double rate_constant = 1.0;

  Reaction() = default;
  Reaction(std::vector<SpeciesIndex> reactants, std::vector<SpeciesIndex> products,
           double rate_constant);

  bool consumes(SpeciesIndex s) const;
  bool produces(SpeciesIndex s) const;
  bool mentions(SpeciesIndex s) const { return consumes(s) || produces(s); }
  /// Net population change of species s when the reaction fires (-1, 0 or +1).
  int delta(SpeciesIndex s) const;
  /// True when firing never changes the state (reactants == products).
  bool is_identity() const { return reactants == products; }

  bool operator==(const Reaction&) const = default;
};

/// Population vector, one non-negative entry per species.
class State {
 public:
  State() = default;
  explicit State(std::vector<Population> populations);
  State(std::initializer_list<Population> populations)
      : State(std::vector<Population>(populations)) {}

  std::size_t size() const { return populations_.size(); }
  Population operator[](SpeciesIndex s) const { return populations_[s]; }
  std::span<const Population> populations() const { return populations_; }
  const std::vector<Population>& vector() const { return populations_; }

  std::string to_string() const;

  auto operator<=>(const State&) const = default;

 private:
  std::vector<Population> populations_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept;
};

class Crn {
 public:
  Crn() = default;
  Crn(std::vector<Species> species, std::vector<Reaction> reactions, State initial);

  std::size_t species_count() const { return species_.size(); }
  std::size_t reaction_count() const { return reactions_.size(); }
  const std::vector<Species>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Reaction& reaction(ReactionIndex i) const { return reactions_.at(i); }
  const State& initial() const { return initial_; }

  std::optional<SpeciesIndex> find_species(std::string_view name) const;
  /// Throws ContractError for unknown names.
  SpeciesIndex species_index(std::string_view name) const;

  bool operator==(const Crn&) const = default;

 private:
  std::vector<Species> species_;
  std::vector<Reaction> reactions_;
  State initial_;
};

/// P<=threshold [ true U<=time_bound target_species = target_value ]
struct Property {
  double threshold = 0.0;
  double time_bound = 0.0;
  SpeciesIndex target_species = 0;
  Population target_value = 0;

  Property() = default;
  Property(double threshold, double time_bound, SpeciesIndex target_species,
           Population target_value);

  bool is_target(const State& x) const { return x[target_species] == target_value; }
};

struct Transition {
  ReactionIndex reaction;
  double rate;
  State target;

  bool operator==(const Transition&) const = default;
};

bool enabled(const State& state, const Reaction& reaction);

/// Throws ContractError if the reaction is disabled, ResourceError on population overflow.
State fire(const State& state, const Reaction& reaction);

/// lambda * prod of reactant populations. Throws ContractError if disabled.
double propensity(const State& state, const Reaction& reaction);

/// One entry per enabled reaction, in declaration order.
std::vector<Transition> successors(const State& state, const Crn& crn);

/// Sum of propensities of enabled reactions that change the state.
double exit_rate(const State& state, const Crn& crn);

}  // namespace crncex
