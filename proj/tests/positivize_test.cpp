#include <gtest/gtest.h>

#include "factorlab/error.hpp"
#include "factorlab/positivize.hpp"
#include "support.hpp"

using namespace factorlab;
using namespace factorlab::testing;

TEST(Positivize, RingMixedFormula) {
  const VarietyContext ctx = context("z2");
  const ExistentialDnf phi = formula("ring-mixed", ctx);
  const PositivizeResult r = positivize(phi, ctx);
  // The decoy x = y fails at <x,x>, <x,y>, so the second disjunct is chosen.
  EXPECT_EQ(r.k, 1u);
  EXPECT_EQ(r.lambda_k, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(r.phi_prime.all_positive());
  EXPECT_EQ(to_string(r.phi_prime), "exists w . (x + (z1 * y) = y + (z1 * x))");
  EXPECT_EQ(r.f1_size, 4u);
  EXPECT_EQ(r.f2_size, 16u);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(to_string(r.witnesses[0].u), "x");
  EXPECT_EQ(to_string(r.witnesses[0].v), "x");
  ASSERT_EQ(r.certificate.size(), 2u);
  for (const auto& c : r.certificate) EXPECT_TRUE(c.holds);
  EXPECT_FALSE(r.certificate[1].positive);
  EXPECT_TRUE(r.substitution.passed());
  EXPECT_EQ(r.substitution.algebras_checked, ctx.pool().size());
  // Φ′ reparses to the same formula.
  EXPECT_EQ(parse_formula(to_string(r.phi_prime), ctx.signature(), 1), r.phi_prime.as_dnf());
}

TEST(Positivize, Deterministic) {
  const VarietyContext ctx = context("n5");
  const ExistentialDnf phi = formula("lattice-mixed", ctx);
  const PositivizeResult a = positivize(phi, ctx);
  const PositivizeResult b = positivize(phi, ctx);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(to_string(a.phi_prime), to_string(b.phi_prime));
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    EXPECT_EQ(a.witnesses[i].u, b.witnesses[i].u);
    EXPECT_EQ(a.witnesses[i].v, b.witnesses[i].v);
  }
}

TEST(Positivize, FirstSatisfiableDisjunctWins) {
  const VarietyContext ctx = context("chain3");
  const auto phi = parse_formula(
      "exists w . (x \\/ z1 = y \\/ z1 and w = x) or (x \\/ z1 = y \\/ z1)", ctx.signature(), 1);
  EXPECT_EQ(positivize(phi, ctx).k, 0u);
  const auto alts = positivize(phi, ctx, {kDefaultClosureBudget, true, 256}).alternatives;
  ASSERT_FALSE(alts.empty());
  EXPECT_EQ(alts.front().disjunct, 0u);
  // Disjunct 2 has no literal on w, so every element of P is a witness.
  std::size_t second = 0;
  for (const auto& a : alts) second += a.disjunct == 1;
  EXPECT_EQ(second, 18u);
}

TEST(Positivize, AlreadyPositive) {
  const VarietyContext ctx = context("chain3");
  const ExistentialDnf phi = formula("lattice-positive", ctx);
  const PositivizeResult r = positivize(phi, ctx);
  EXPECT_EQ(r.phi_prime.as_dnf(), phi);
  EXPECT_TRUE(r.substitution.passed());
}

TEST(Positivize, NoWitness) {
  const VarietyContext ctx = context("z2");
  try {
    positivize(formula("equality", ctx), ctx);
    FAIL() << "x = y positivized";
  } catch (const NoWitnessError& e) {
    EXPECT_NE(e.assignment().find("x = <x, x>"), std::string::npos);
    EXPECT_NE(e.assignment().find("y = <x, y>"), std::string::npos);
    EXPECT_NE(e.assignment().find("z1 = <0, 1>"), std::string::npos);
  }
}

TEST(Positivize, ResourceBound) {
  const VarietyContext ctx = context("z6");
  EXPECT_THROW(positivize(formula("ring-dfc", ctx), ctx), ResourceError);
}

TEST(Positivize, SubstitutionCheckCatchesBadWitnesses) {
  const VarietyContext ctx = context("chain3");
  const ExistentialDnf phi = formula("lattice-positive", ctx);
  const Signature& sig = ctx.signature();
  const std::vector<WitnessTerms> good{{parse_term("0", sig), parse_term("1", sig)}};
  EXPECT_TRUE(check_substitution(phi, 0, good, ctx).passed());
  // w = 1 fails w /\ z1 = w where z1 = 0.
  const std::vector<WitnessTerms> bad{{parse_term("1", sig), parse_term("1", sig)}};
  const SubstitutionReport r = check_substitution(phi, 0, bad, ctx);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.failures[0].find("(x, x, 0, u(x))"), std::string::npos);
}

TEST(Preservation, SurjectiveHomomorphisms) {
  EXPECT_EQ(surjective_homomorphisms(load("z6"), load("z3"), 64).size(), 1u);
  EXPECT_EQ(surjective_homomorphisms(load("z4"), load("z2"), 64).size(), 1u);
  EXPECT_EQ(surjective_homomorphisms(load("z5"), load("z2"), 64).size(), 0u);
  EXPECT_EQ(surjective_homomorphisms(load("chain3"), load("chain2"), 64).size(), 2u);
  for (const auto& h : surjective_homomorphisms(load("n5"), load("chain2"), 64))
    EXPECT_TRUE(is_homomorphism(load("n5"), load("chain2"), h));
}

TEST(Preservation, PositiveFormulasArePreserved) {
  for (auto [ctx_stem, phi_stem] : {std::pair{"z2", "ring-dfc"}, {"z12", "ring-dfc"},
                                    {"chain3", "lattice-positive"}, {"n5", "lattice-dfc"},
                                    {"bool2", "lattice-dfc"}}) {
    const VarietyContext ctx = context(ctx_stem);
    const ExistentialDnf phi = formula(phi_stem, ctx);
    const PreservationReport r = check_preservation(strip_to_positive(phi, 0), ctx);
    EXPECT_TRUE(r.passed()) << ctx_stem << " " << phi_stem << ": "
                            << (r.passed() ? "" : r.violations[0].description);
    EXPECT_GT(r.homomorphisms_checked, 0u);
    EXPECT_GT(r.products_checked, 0u);
  }
}

TEST(Preservation, SmuggledNegationIsDetected) {
  const VarietyContext ctx = context("z6");
  PositiveExistential psi = strip_to_positive(formula("equality", ctx), 0);
  psi.literals[0].positive = false;  // x != y, dressed up as positive
  EXPECT_FALSE(psi.all_positive());
  const PreservationReport r = check_preservation(psi, ctx);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations[0].kind, "image");
}
