#include <gtest/gtest.h>

#include "crncex/errors.hpp"
#include "crncex/oracle.hpp"
#include "crncex/witness.hpp"
#include "support.hpp"

using namespace crncex;
using crncex::testing::futile_cycle;
using crncex::testing::single_species;

TEST(EnumerateWitnesses, SingleSpecies) {
  const Crn crn = single_species();
  const PathSet two = enumerate_witnesses(crn, Property(0.1, 1, 1, 42), 2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(*two.begin(), (std::vector<State>{State({1, 40}), State({1, 41}), State({1, 42})}));
  EXPECT_TRUE(enumerate_witnesses(crn, Property(0.1, 1, 1, 42), 4).empty());
  EXPECT_TRUE(enumerate_witnesses(crn, Property(0.1, 1, 1, 41), 2).empty());
}

TEST(EnumerateWitnesses, ZeroLength) {
  const Crn crn = futile_cycle();
  const PathSet p = enumerate_witnesses(crn, Property(0.1, 1, 4, 50), 0);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(*p.begin(), std::vector<State>{crn.initial()});
  EXPECT_TRUE(enumerate_witnesses(crn, Property(0.1, 1, 4, 49), 0).empty());
}

TEST(EnumerateWitnesses, MembersAreValidLoopFree) {
  const Crn crn = futile_cycle();
  const Property prop(0.1, 1, 4, 49);
  for (std::uint32_t k = 1; k <= 4; ++k) {
    for (const auto& states : enumerate_witnesses(crn, prop, k)) {
      ASSERT_EQ(states.size(), k + 1);
      EXPECT_EQ(states.front(), crn.initial());
      EXPECT_TRUE(prop.is_target(states.back()));
      Witness w{states, {}};
      for (std::size_t i = 1; i < states.size(); ++i) {
        auto r = explaining_reaction(crn, states[i - 1], states[i]);
        ASSERT_TRUE(r.has_value());
        w.reactions.push_back(*r);
      }
      EXPECT_NO_THROW(validate_trace(w, crn));
      EXPECT_TRUE(is_loop_free(w));
    }
  }
}

TEST(EnumerateWitnesses, Deterministic) {
  const Crn crn = futile_cycle();
  const Property prop(0.1, 1, 4, 49);
  EXPECT_EQ(enumerate_witnesses(crn, prop, 3), enumerate_witnesses(crn, prop, 3));
}

TEST(EnumerateWitnesses, VisitGuard) {
  const Crn crn = futile_cycle();
  EXPECT_THROW(enumerate_witnesses(crn, Property(0.1, 1, 4, 45), 12, 100), ResourceError);
}

TEST(ExploreBounded, FutileCycleStateCount) {
  const Crn crn = futile_cycle();
  const FiniteCtmc c = explore_bounded(crn, Property(4e-2, 100, 4, 40), 100);
  EXPECT_GT(c.size(), 100);
  EXPECT_LT(c.size(), 1000);
}
