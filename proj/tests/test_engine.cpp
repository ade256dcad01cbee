#include <gtest/gtest.h>

#include <deque>

#include "crncex/engine.hpp"
#include "crncex/errors.hpp"
#include "crncex/oracle.hpp"
#include "support.hpp"

using namespace crncex;
using crncex::testing::kSolver;

namespace {

EngineConfig config() {
  EngineConfig c;
  c.solver_command = kSolver;
  c.wall_clock_budget = 120;
  return c;
}

std::vector<bool> search(const WitnessCtmc& g, bool forward, const Property& prop) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (const auto& [key, edge] : g.edges()) {
    if (forward) {
      adj[key.first].push_back(key.second);
    } else {
      adj[key.second].push_back(key.first);
    }
  }
  std::vector<bool> seen(g.node_count(), false);
  std::deque<NodeId> queue;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (forward ? n == g.initial() : prop.is_target(g.state(n))) {
      seen[n] = true;
      queue.push_back(n);
    }
  }
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    for (NodeId m : adj[n]) {
      if (!seen[m]) {
        seen[m] = true;
        queue.push_back(m);
      }
    }
  }
  return seen;
}

void expect_graph_invariants(const CexResult& r, const Property& prop) {
  const WitnessCtmc& g = r.ctmc;
  const auto fwd = search(g, true, prop);
  const auto bwd = search(g, false, prop);
  for (NodeId n = 0; n < g.node_count(); ++n) {
    EXPECT_TRUE(fwd[n]) << g.state(n).to_string() << " unreachable";
    EXPECT_TRUE(bwd[n]) << g.state(n).to_string() << " cannot reach a target";
  }
  for (std::size_t i = 1; i < r.probability_history.size(); ++i) {
    EXPECT_GE(r.probability_history[i], r.probability_history[i - 1] * (1 - 1e-9));
  }
  for (const Witness& w : r.witnesses) {
    EXPECT_NO_THROW(validate_trace(w, g.crn()));
    EXPECT_EQ(w.front(), g.crn().initial());
    EXPECT_TRUE(prop.is_target(w.back()));
  }
}

}  // namespace

TEST(Engine, SingleSpeciesLooseThreshold) {
  const Crn crn = crncex::testing::single_species();
  const Property prop(1e-20, 100, 1, 70);
  const CexResult r = generate_counterexample(crn, prop, config());
  ASSERT_TRUE(r.success()) << r.stop_reason;
  EXPECT_GT(r.probability, 1e-20);
  EXPECT_EQ(r.final_bound, 30u);
  EXPECT_LE(r.ctmc.size(), 122u);
  EXPECT_DOUBLE_EQ(reach_probability(r.ctmc.to_finite_ctmc(prop), 100.0), r.probability);
  expect_graph_invariants(r, prop);
}

TEST(Engine, SingleSpeciesScaffolded) {
  const Crn crn = crncex::testing::single_species();
  const Property prop(1e-4, 100, 1, 70);
  std::size_t calls = 0;
  const CexResult r =
      generate_counterexample(crn, prop, config(), [&](const WitnessCtmc&, double) { ++calls; });
  ASSERT_TRUE(r.success()) << r.stop_reason;
  EXPECT_GT(r.probability, 1e-4);
  EXPECT_LE(r.probability, 1.67e-4);
  EXPECT_GT(r.fragment_count, 0u);
  EXPECT_EQ(calls, r.probability_history.size());
  expect_graph_invariants(r, prop);
}

TEST(Engine, NoCounterexampleExhaustsBudget) {
  const Crn crn = crncex::testing::single_species();
  const Property prop(0.5, 100, 1, 70);
  EngineConfig c = config();
  c.wall_clock_budget = 5;
  const CexResult r = generate_counterexample(crn, prop, c);
  EXPECT_EQ(r.outcome, Outcome::BudgetExhausted);
  EXPECT_LT(r.probability, 0.5);
  EXPECT_FALSE(r.probability_history.empty());
  expect_graph_invariants(r, prop);
}

TEST(Engine, BoundCapWithoutOptimizationsMatchesOracle) {
  const Crn crn = crncex::testing::single_species();
  const Property prop(1.0, 1, 1, 42);
  EngineConfig c = config();
  c.scaffold_j_max = 0;
  c.max_bound = 6;
  const CexResult r = generate_counterexample(crn, prop, c);
  EXPECT_EQ(r.outcome, Outcome::BudgetExhausted);
  PathSet expected;
  for (std::uint32_t k = 0; k <= 6; ++k) expected.merge(enumerate_witnesses(crn, prop, k));
  PathSet found;
  for (const Witness& w : r.witnesses) found.insert(w.states);
  EXPECT_EQ(found, expected);
}

TEST(Engine, FutileCycleFirstWitness) {
  const Crn crn = crncex::testing::futile_cycle();
  const Property prop(1e-30, 100, 4, 40);
  const CexResult r = generate_counterexample(crn, prop, config());
  ASSERT_TRUE(r.success()) << r.stop_reason;
  EXPECT_GE(r.probability, 1e-30);
  expect_graph_invariants(r, prop);
}

TEST(Engine, MotilityWithDnc) {
  const Crn crn = crncex::testing::motility();
  const Property prop(1e-20, 100, crn.species_index("CodY"), 19);
  EngineConfig c = config();
  c.delta = 3;
  const CexResult r = generate_counterexample(crn, prop, c);
  ASSERT_TRUE(r.success()) << r.stop_reason;
  EXPECT_GE(r.probability, 1e-20);
  expect_graph_invariants(r, prop);
}

TEST(Engine, InitialStateIsTarget) {
  const Crn crn = crncex::testing::single_species();
  const CexResult r = generate_counterexample(crn, Property(0.5, 1, 1, 40), config());
  EXPECT_TRUE(r.success());
  EXPECT_DOUBLE_EQ(r.probability, 1.0);
}

TEST(Engine, ConfigValidation) {
  const Crn crn = crncex::testing::single_species();
  EngineConfig c = config();
  c.delta = 7;
  EXPECT_THROW(generate_counterexample(crn, Property(1e-4, 100, 1, 70), c), ConfigError);
  c = config();
  c.recheck_growth = 0;
  EXPECT_THROW(generate_counterexample(crn, Property(1e-4, 100, 1, 70), c), ConfigError);
  c = config();
  c.wall_clock_budget = 0;
  EXPECT_THROW(generate_counterexample(crn, Property(1e-4, 100, 1, 70), c), ConfigError);
}

TEST(Engine, MissingSolverIsAnError) {
  const Crn crn = crncex::testing::single_species();
  EngineConfig c = config();
  c.solver_command = "/nonexistent/solver -in";
  EXPECT_THROW(generate_counterexample(crn, Property(1e-4, 100, 1, 70), c), SolverError);
}
