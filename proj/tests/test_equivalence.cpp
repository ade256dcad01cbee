#include <gtest/gtest.h>

#include "crncex/engine.hpp"
#include "crncex/oracle.hpp"
#include "support.hpp"

using namespace crncex;
using crncex::testing::kSolver;

namespace {

PathSet as_paths(const std::vector<Witness>& ws) {
  PathSet out;
  for (const Witness& w : ws) out.insert(w.states);
  return out;
}

void expect_equivalent(const Crn& crn, const Property& prop, std::uint32_t k,
                       SolverSession& session) {
  const std::vector<Witness> bmc = enumerate_bmc_witnesses(crn, prop, k, session);
  for (const Witness& w : bmc) {
    EXPECT_NO_THROW(validate_trace(w, crn));
    EXPECT_TRUE(is_loop_free(w));
  }
  const PathSet paths = as_paths(bmc);
  EXPECT_EQ(paths.size(), bmc.size()) << "duplicate witness returned";
  EXPECT_EQ(paths, enumerate_witnesses(crn, prop, k))
      << "theta=" << prop.target_value << " k=" << k;
}

}  // namespace

TEST(Equivalence, SingleSpecies) {
  const Crn crn = crncex::testing::single_species();
  SolverSession session(kSolver);
  for (Population theta : {41, 42, 43}) {
    for (std::uint32_t k = 0; k <= 6; ++k) {
      expect_equivalent(crn, Property(0.1, 1, 1, theta), k, session);
    }
  }
}

TEST(Equivalence, SingleSpeciesNamedFacts) {
  const Crn crn = crncex::testing::single_species();
  SolverSession session(kSolver);
  EXPECT_EQ(enumerate_bmc_witnesses(crn, Property(0.1, 1, 1, 42), 2, session).size(), 1u);
  EXPECT_EQ(enumerate_bmc_witnesses(crn, Property(0.1, 1, 1, 42), 4, session).size(), 0u);
  EXPECT_EQ(enumerate_bmc_witnesses(crn, Property(0.1, 1, 1, 41), 2, session).size(), 0u);
}

TEST(Equivalence, FutileCycle) {
  const Crn crn = crncex::testing::futile_cycle();
  SolverSession session(kSolver);
  for (Population theta : {48, 49, 50, 51}) {
    for (std::uint32_t k = 0; k <= 4; ++k) {
      expect_equivalent(crn, Property(0.1, 1, 4, theta), k, session);
    }
  }
}
