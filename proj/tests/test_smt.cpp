#include <gtest/gtest.h>

#include "crncex/bmc_encode.hpp"
#include "crncex/errors.hpp"
#include "crncex/smt.hpp"
#include "support.hpp"

using namespace crncex;
using crncex::testing::kSolver;
using crncex::testing::single_species;

TEST(SolverSession, TrivialChecks) {
  SolverSession s(kSolver);
  const Var x{0, 0};
  EXPECT_TRUE(is_sat(s.check_sat(eq(x, 1) && eq(x, 1))));
  EXPECT_FALSE(is_sat(s.check_sat(eq(x, 1) && eq(x, 2))));
  EXPECT_TRUE(is_sat(s.check_sat(Formula::top())));
  EXPECT_FALSE(is_sat(s.check_sat(Formula::bottom())));
  EXPECT_EQ(s.depth(), 0u);
}

TEST(SolverSession, ModelCoversDeclaredVariables) {
  SolverSession s(kSolver);
  s.assert_formula(eq(Var{0, 0}, 7) && eq(Var{1, 0}, Var{0, 0}, -3) && ge(Var{2, 1}, 0));
  const CheckResult r = s.check();
  ASSERT_TRUE(is_sat(r));
  const auto& m = std::get<SolverModel>(r);
  EXPECT_EQ(m.value(Var{0, 0}), 7);
  EXPECT_EQ(m.value(Var{1, 0}), 4);
  EXPECT_TRUE(m.contains(Var{2, 1}));
  EXPECT_THROW(m.value(Var{9, 9}), DecodeError);
}

TEST(SolverSession, NegativeValues) {
  SolverSession s(kSolver);
  s.assert_formula(eq(Var{0, 0}, -12));
  const CheckResult r = s.check();
  ASSERT_TRUE(is_sat(r));
  EXPECT_EQ(std::get<SolverModel>(r).value(Var{0, 0}), -12);
}

TEST(SolverSession, PushPopAndReset) {
  SolverSession s(kSolver);
  s.assert_formula(gt(Var{0, 0}, 5));
  s.push();
  s.assert_formula(eq(Var{0, 0}, 2));
  EXPECT_FALSE(is_sat(s.check()));
  s.pop();
  EXPECT_TRUE(is_sat(s.check()));
  s.reset();
  s.assert_formula(eq(Var{0, 0}, 2));
  EXPECT_TRUE(is_sat(s.check()));
  EXPECT_THROW(s.pop(), ContractError);
}

TEST(SolverSession, ShortestWitnessTo42) {
  const Crn crn = single_species();
  const UnrollContext ctx(crn, 2);
  SolverSession s(kSolver);
  const CheckResult r = s.check_sat(encode_bmc(ctx, Property(0.1, 1, 1, 42)));
  ASSERT_TRUE(is_sat(r));
  const auto& m = std::get<SolverModel>(r);
  EXPECT_EQ(m.value(Var{2, 1}), 42);
  const Witness w = extract_witness(m, ctx);
  EXPECT_EQ(w.to_string(), "[1,40] -R1-> [1,41] -R1-> [1,42]");
}

TEST(SolverSession, EmittedScriptIsSat) {
  const Crn crn = single_species();
  SolverSession s(kSolver);
  s.assert_formula(encode_bmc(crn, Property(0.1, 1, 1, 42), 2));
  EXPECT_TRUE(is_sat(s.check()));
}

TEST(SolverSession, ExclusionExhaustsUniqueWitness) {
  const Crn crn = single_species();
  const UnrollContext ctx(crn, 2);
  SolverSession s(kSolver);
  s.assert_formula(encode_bmc(ctx, Property(0.1, 1, 1, 42)));
  const CheckResult r = s.check();
  ASSERT_TRUE(is_sat(r));
  s.assert_formula(encode_exclusion(ctx, extract_witness(std::get<SolverModel>(r), ctx)));
  EXPECT_FALSE(is_sat(s.check()));
}

TEST(SolverSession, ExcludingNonWitnessKeepsSat) {
  const Crn crn = single_species();
  const UnrollContext ctx(crn, 2);
  SolverSession s(kSolver);
  s.assert_formula(encode_bmc(ctx, Property(0.1, 1, 1, 42)));
  s.assert_formula(encode_exclusion(ctx, Witness{{State({1, 40}), State({1, 39}), State({1, 38})}, {1, 1}}));
  EXPECT_TRUE(is_sat(s.check()));
}

TEST(SolverSession, MissingBinaryIsSolverError) {
  EXPECT_THROW(
      {
        SolverSession s("/nonexistent/solver-binary -in");
        s.check_sat(Formula::top());
      },
      SolverError);
}

TEST(SolverSession, TimeoutIsNotUnsat) {
  EXPECT_THROW(
      {
        SolverSession s("sleep 30", std::chrono::milliseconds(300));
        s.check_sat(Formula::top());
      },
      SolverTimeout);
}

TEST(ParseModel, GetValueResponse) {
  const SolverModel m = parse_model("((v0_0 1)\n (v0_1 (- 40))\n (v12_3 0))");
  EXPECT_EQ(m.value(Var{0, 0}), 1);
  EXPECT_EQ(m.value(Var{0, 1}), -40);
  EXPECT_EQ(m.value(Var{12, 3}), 0);
  EXPECT_THROW(parse_model("((v0_0 1)"), DecodeError);
  EXPECT_THROW(parse_model("((x 1))"), DecodeError);
}

TEST(ExtractWitness, ZeroLength) {
  const Crn crn = single_species();
  const UnrollContext ctx(crn, 0);
  const Witness w = extract_witness(SolverModel({{Var{0, 0}, 1}, {Var{0, 1}, 40}}), ctx);
  EXPECT_EQ(w.length(), 0u);
  EXPECT_EQ(w.front(), crn.initial());
}

TEST(ExtractWitness, LowestReactionIndexOnTies) {
  const Crn crn = parse_crn("species A=1; species B=0; A -> B @ 1; A -> B @ 5");
  const UnrollContext ctx(crn, 1);
  const Witness w = extract_witness(
      SolverModel({{Var{0, 0}, 1}, {Var{0, 1}, 0}, {Var{1, 0}, 0}, {Var{1, 1}, 1}}), ctx);
  EXPECT_EQ(w.reactions, (std::vector<ReactionIndex>{0}));
}

TEST(ExtractWitness, UnexplainedStep) {
  const Crn crn = single_species();
  const UnrollContext ctx(crn, 1);
  EXPECT_THROW(extract_witness(SolverModel({{Var{0, 0}, 1}, {Var{0, 1}, 40}, {Var{1, 0}, 1},
                                            {Var{1, 1}, 45}}),
                               ctx),
               EncodingError);
}
