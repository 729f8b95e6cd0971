#include <gtest/gtest.h>

#include <set>

#include "factorlab/error.hpp"
#include "factorlab/variety.hpp"
#include "support.hpp"

using namespace factorlab;
using namespace factorlab::testing;

namespace {

std::multiset<std::size_t> sizes(const VarietyContext& ctx) {
  std::multiset<std::size_t> out;
  for (const auto& m : ctx.pool()) out.insert(m.algebra.size());
  return out;
}

}  // namespace

TEST(Variety, ContextValidation) {
  const FiniteAlgebra z6 = load("z6");
  const Signature& sig = z6.signature();
  EXPECT_NO_THROW(VarietyContext(z6, {parse_term("0", sig)}, {parse_term("1", sig)}));
  EXPECT_THROW(VarietyContext(z6, {parse_term("0", sig)}, {}), ValidationError);
  EXPECT_THROW(VarietyContext(z6, {parse_term("x", sig)}, {parse_term("1", sig)}), ValidationError);
  EXPECT_THROW(VarietyContext(z6, {Term::apply("2")}, {parse_term("1", sig)}), ValidationError);
}

TEST(Variety, ZerosAndOnes) {
  const VarietyContext ctx = context("z12-reversed");
  EXPECT_EQ(ctx.zeros(ctx.generator()), (std::vector<Element>{1}));
  EXPECT_EQ(ctx.ones(ctx.generator()), (std::vector<Element>{0}));
}

TEST(Variety, QuotientPoolOfZ12) {
  const VarietyContext ctx = context("z12");
  // Depth one: the generator and its proper quotients Z1, Z2, Z3, Z4, Z6.
  EXPECT_EQ(sizes(ctx), (std::multiset<std::size_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(ctx.pool()[0].recipe, "Z12");
  const FiniteAlgebra z = load("z12");
  for (const auto& m : ctx.pool()) {
    if (m.algebra.size() == 12) continue;
    EXPECT_TRUE(m.algebra.same_structure(ring_mod(m.algebra.size()))) << m.recipe;
    EXPECT_EQ(m.algebra.name(), m.recipe);
  }
}

TEST(Variety, PoolMembersSatisfyGeneratorIdentities) {
  // Boolean rings: x*x = x and x + x = 0 hold in every member of V(Z2).
  const VarietyContext ctx = context("z2");
  EXPECT_GE(ctx.pool().size(), 4u);
  const Signature& sig = ctx.signature();
  const auto idempotent = parse_formula("x * x = x and x + x = 0", sig, 1);
  for (const auto& m : ctx.pool())
    for (Element x = 0; x < m.algebra.size(); ++x)
      EXPECT_TRUE(eval_dnf(m.algebra, idempotent, x, x, std::vector<Element>{0})) << m.recipe;
}

TEST(Variety, PoolIsDeterministicAndDeduplicated) {
  const VarietyContext a = context("chain3");
  const VarietyContext b = context("chain3");
  ASSERT_EQ(a.pool().size(), b.pool().size());
  for (std::size_t i = 0; i < a.pool().size(); ++i) {
    EXPECT_EQ(a.pool()[i].recipe, b.pool()[i].recipe);
    EXPECT_TRUE(a.pool()[i].algebra.same_structure(b.pool()[i].algebra));
    for (std::size_t j = 0; j < i; ++j)
      EXPECT_FALSE(a.pool()[i].algebra.same_structure(a.pool()[j].algebra));
    EXPECT_LE(a.pool()[i].algebra.size(), 8u);
  }
}

TEST(Variety, PoolOverride) {
  const VarietyContext shallow = load_context(fixture("z2.ctx.json"), PoolOverride{0, std::nullopt});
  EXPECT_EQ(shallow.pool().size(), 1u);
  const VarietyContext small = load_context(fixture("z2.ctx.json"), PoolOverride{std::nullopt, 2});
  for (const auto& m : small.pool()) EXPECT_LE(m.algebra.size(), 2u);
}

TEST(Variety, ZeroOneCondition) {
  for (const char* stem : {"z6", "chain3", "n5", "bool2"})
    EXPECT_TRUE(verify_zero_one_condition(context(stem)).passed()) << stem;

  // A two-element semilattice whose constants coincide violates 0 = 1 -> x = y.
  Signature sig({{"m", 2}, {"0", 0}, {"1", 0}});
  FiniteAlgebra bad("S", sig, 2, {{0, 0, 0, 1}, {0}, {0}});
  VarietyContext ctx(bad, {Term::apply("0")}, {Term::apply("1")});
  const ZeroOneReport r = verify_zero_one_condition(ctx);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations[0].algebra, "S");
}
