#include <gtest/gtest.h>

#include "crncex/errors.hpp"
#include "crncex/parser.hpp"
#include "support.hpp"

using namespace crncex;

TEST(Parser, SingleSpeciesInline) {
  const Crn crn = parse_crn("species S1=1; species S2=40; S1 -> S1 + S2 @ 1.0; S2 -> @ 0.025");
  EXPECT_EQ(crn.species_count(), 2u);
  EXPECT_EQ(crn.reaction_count(), 2u);
  EXPECT_EQ(crn.initial(), State({1, 40}));
  EXPECT_EQ(crn.reaction(1).products.size(), 0u);
  EXPECT_DOUBLE_EQ(crn.reaction(1).rate_constant, 0.025);
}

TEST(Parser, NoReactions) {
  const Crn crn = parse_crn("species A=0;");
  EXPECT_EQ(crn.species_count(), 1u);
  EXPECT_EQ(crn.reaction_count(), 0u);
}

TEST(Parser, EmptyLeftSide) {
  const Crn crn = parse_crn("species R=5\n-> R @ 0.0038\n");
  EXPECT_TRUE(crn.reaction(0).reactants.empty());
}

TEST(Parser, CommentsAndBlankLines) {
  const Crn crn = parse_crn("# header\n\nspecies A=1 # trailing\nA -> @ 2\n");
  EXPECT_EQ(crn.reaction_count(), 1u);
}

TEST(Parser, NonPositiveRate) {
  EXPECT_THROW(parse_crn("species A=1; species B=0; A -> B @ -1.0"), ParseError);
  EXPECT_THROW(parse_crn("species A=1; A -> @ 0"), ParseError);
}

TEST(Parser, UnknownSpecies) {
  EXPECT_THROW(parse_crn("species A=1; A -> C @ 1"), ParseError);
}

TEST(Parser, DuplicateDeclaration) {
  EXPECT_THROW(parse_crn("species A=1; species A=2;"), ParseError);
}

TEST(Parser, StoichiometryRejected) {
  EXPECT_THROW(parse_crn("species A=1; species B=0; 2A -> B @ 1"), ParseError);
  EXPECT_THROW(parse_crn("species A=1; species B=0; A + A -> B @ 1"), ParseError);
}

TEST(Parser, ErrorCarriesPosition) {
  try {
    parse_crn("species A=1\nA -> Q @ 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("Q"), std::string::npos);
  }
}

TEST(Parser, SyntaxErrors) {
  EXPECT_THROW(parse_crn("species A"), ParseError);
  EXPECT_THROW(parse_crn("species A=-1"), ParseError);
  EXPECT_THROW(parse_crn("species A=1; A -> @"), ParseError);
  EXPECT_THROW(parse_crn("species A=1; A @ 1"), ParseError);
}

TEST(Parser, RoundTripBundledModels) {
  for (const char* name : {"single_species.crn", "futile_cycle.crn", "yeast.crn", "motility.crn"}) {
    const Crn crn = load_crn(crncex::testing::model_path(name));
    EXPECT_EQ(parse_crn(pretty_print(crn)), crn) << name;
  }
}

TEST(Parser, RoundTripAwkwardRates) {
  const Crn crn = parse_crn("species A=3; species B=0; A -> B @ 0.1; B -> A @ 1.05e3; -> A @ 3.21");
  EXPECT_EQ(parse_crn(pretty_print(crn)), crn);
}

TEST(Parser, MissingFile) { EXPECT_THROW(load_crn("/nonexistent/model.crn"), Error); }

TEST(Models, YeastShape) {
  const Crn crn = crncex::testing::yeast();
  EXPECT_EQ(crn.species_count(), 7u);
  EXPECT_EQ(crn.reaction_count(), 8u);
  EXPECT_EQ(crn.species_index("Gbg"), 5u);
}
