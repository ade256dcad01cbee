#include "crncex/oracle.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "crncex/errors.hpp"

namespace crncex {

namespace {

struct PathSearch {
  const Crn& crn;
  const Property& prop;
  std::uint32_t k;
  std::size_t max_visits;
  std::size_t visits = 0;
  std::vector<State> path;
  std::unordered_set<State, StateHash> on_path;
  PathSet found;

  void expand() {
    if (++visits > max_visits) {
      throw ResourceError(fmt::format("path enumeration exceeded {} expansions", max_visits));
    }
    const State& here = path.back();
    if (path.size() == k + 1) {
      if (prop.is_target(here)) found.insert(path);
      return;
    }
    // The remaining steps change the target species by at most one each.
    const auto remaining = static_cast<Population>(k + 1 - path.size());
    const Population gap = here[prop.target_species] - prop.target_value;
    if (gap > remaining || -gap > remaining) return;
    for (const Transition& t : successors(here, crn)) {
      if (on_path.contains(t.target)) continue;
      path.push_back(t.target);
      on_path.insert(t.target);
      expand();
      on_path.erase(path.back());
      path.pop_back();
    }
  }
};

}  // namespace

PathSet enumerate_witnesses(const Crn& crn, const Property& prop, std::uint32_t k,
                            std::size_t max_visits) {
  PathSearch search{crn, prop, k, max_visits, 0, {}, {}, {}};
  search.path.push_back(crn.initial());
  search.on_path.insert(crn.initial());
  search.expand();
  return std::move(search.found);
}

double expm_reach_probability(const FiniteCtmc& ctmc, double time_bound, std::size_t max_states) {
  if (static_cast<std::size_t>(ctmc.size()) > max_states) {
    throw ResourceError(fmt::format("matrix-exponential oracle limited to {} states, got {}",
                                    max_states, ctmc.size()));
  }
  if (!(time_bound >= 0.0)) throw ContractError("time bound must be non-negative");
  if (ctmc.is_target(ctmc.initial())) return 1.0;
  const FiniteCtmc absorbed = make_absorbing(ctmc);
  const Eigen::MatrixXd q = absorbed.generator() * time_bound;
  const Eigen::MatrixXd transient = q.exp();
  double p = 0.0;
  for (Eigen::Index j = 0; j < absorbed.size(); ++j) {
    if (absorbed.is_target(j)) p += transient(absorbed.initial(), j);
  }
  return std::clamp(p, 0.0, 1.0);
}

FiniteCtmc explore_bounded(const Crn& crn, const Property& prop, Population cap,
                           std::size_t max_states) {
  std::unordered_map<State, Eigen::Index, StateHash> index;
  std::vector<State> states;
  std::deque<Eigen::Index> frontier;
  std::vector<FiniteCtmc::Triplet> rates;

  auto intern = [&](const State& s) {
    auto [it, inserted] = index.emplace(s, static_cast<Eigen::Index>(states.size()));
    if (inserted) {
      if (states.size() >= max_states) {
        throw ResourceError(fmt::format("bounded exploration exceeded {} states", max_states));
      }
      states.push_back(s);
      frontier.push_back(it->second);
    }
    return it->second;
  };

  intern(crn.initial());
  while (!frontier.empty()) {
    const Eigen::Index i = frontier.front();
    frontier.pop_front();
    const State here = states[static_cast<std::size_t>(i)];
    if (prop.is_target(here)) continue;
    for (const Transition& t : successors(here, crn)) {
      if (t.target == here) continue;
      bool inside = true;
      for (Population p : t.target.populations()) inside = inside && p <= cap;
      if (!inside) continue;
      rates.emplace_back(i, intern(t.target), t.rate);
    }
  }
  std::vector<bool> target(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) target[i] = prop.is_target(states[i]);
  return FiniteCtmc(static_cast<Eigen::Index>(states.size()), rates, 0, std::move(target));
}

}  // namespace crncex
