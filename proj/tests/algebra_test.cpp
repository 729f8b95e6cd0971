#include <gtest/gtest.h>

#include <random>

#include "factorlab/algebra.hpp"
#include "factorlab/congruence.hpp"
#include "factorlab/error.hpp"
#include "support.hpp"

using namespace factorlab;
using namespace factorlab::testing;

TEST(Algebra, FixtureMatchesModularArithmetic) {
  const FiniteAlgebra z6 = load("z6");
  const FiniteAlgebra ref = ring_mod(6);
  EXPECT_TRUE(z6.same_structure(ref));
  EXPECT_EQ(z6.name(), "Z6");
  const auto plus = *z6.signature().find("+");
  const auto times = *z6.signature().find("·");  // alias of *
  EXPECT_EQ(z6.apply(plus, 4, 5), 3u);
  EXPECT_EQ(z6.apply(times, 4, 5), 2u);
}

TEST(Algebra, RowMajorIndexing) {
  // f(a, b, c) = a for n = 2: entries 4..7 are 1.
  Signature sig({{"f", 3}});
  FiniteAlgebra a("proj", sig, 2, {{0, 0, 0, 0, 1, 1, 1, 1}});
  const Element args[] = {1, 0, 1};
  EXPECT_EQ(a.apply(0, args), 1u);
  const Element args2[] = {0, 1, 1};
  EXPECT_EQ(a.apply(0, args2), 0u);
}

TEST(Algebra, ValidationNamesTheSymbol) {
  Signature sig({{"+", 2}, {"c", 0}});
  try {
    FiniteAlgebra bad("bad", sig, 2, {{0, 1, 1}, {0}});
    FAIL() << "short table accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'+'"), std::string::npos);
  }
  try {
    FiniteAlgebra bad("bad", sig, 2, {{0, 1, 1, 0}, {2}});
    FAIL() << "out-of-range entry accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("entry 0"), std::string::npos);
  }
  EXPECT_THROW(FiniteAlgebra("empty", sig, 0, {{}, {}}), ValidationError);
  EXPECT_THROW(Signature({{"f", 1}, {"f", 2}}), ValidationError);
  EXPECT_THROW(Signature({{"f", 1}}, 0), ValidationError);
}

TEST(Algebra, MalformedFixturesAreRejected) {
  EXPECT_THROW(load_algebra(fixture("malformed/short-table.alg.json")), ValidationError);
  EXPECT_THROW(load_algebra(fixture("malformed/out-of-range.alg.json")), ValidationError);
  EXPECT_THROW(load_algebra(fixture("malformed/not-json.alg.json")), ValidationError);
  EXPECT_THROW(load_algebra(fixture("missing.alg.json")), IoError);
}

TEST(Algebra, JsonRoundTrip) {
  for (const char* stem : {"z6", "n5", "bool2", "z2xz2"}) {
    const FiniteAlgebra a = load(stem);
    const FiniteAlgebra b = parse_algebra(algebra_to_json(a));
    EXPECT_TRUE(a.same_structure(b)) << stem;
    EXPECT_EQ(a.name(), b.name());
  }
}

TEST(Algebra, EvalTerm) {
  const FiniteAlgebra z6 = load("z6");
  const Term t = Term::apply("+", {Term::apply("*", {Term::variable("x"), Term::variable("x")}),
                                   Term::apply("1")});
  EXPECT_EQ(eval_term(z6, t, {{"x", 4}}), 5u);  // 16 + 1 mod 6
  EXPECT_THROW(eval_term(z6, t, {}), ValidationError);
  EXPECT_THROW(eval_term(z6, Term::apply("-", {Term::variable("x")}), {{"x", 1}}), ValidationError);
  EXPECT_THROW(eval_term(z6, Term::apply("+", {Term::variable("x")}), {{"x", 1}}), ValidationError);
}

TEST(Algebra, ProductIsCoordinatewise) {
  const FiniteAlgebra z2 = load("z2");
  const FiniteAlgebra z3 = load("z3");
  const FiniteAlgebra p = direct_product(z2, z3);
  EXPECT_EQ(p.size(), 6u);
  const ProductEncoding enc{3};
  for (std::size_t op = 0; op < p.signature().size(); ++op) {
    if (p.signature()[op].arity != 2) continue;
    for (Element a = 0; a < 6; ++a)
      for (Element b = 0; b < 6; ++b) {
        const Element r = p.apply(op, a, b);
        EXPECT_EQ(enc.first(r), z2.apply(op, enc.first(a), enc.first(b)));
        EXPECT_EQ(enc.second(r), z3.apply(op, enc.second(a), enc.second(b)));
      }
  }
  // Z2 x Z3 is Z6 up to the CRT relabelling, so the fixture Z2xZ2 is not.
  EXPECT_TRUE(direct_product(z2, z2).same_structure(load("z2xz2")));
  EXPECT_THROW(direct_product(z2, load("chain2")), ValidationError);
}

TEST(Algebra, SubalgebraClosure) {
  const FiniteAlgebra z6 = load("z6");
  const Subalgebra whole = subalgebra_generated(z6, {});
  EXPECT_EQ(whole.algebra.size(), 6u);  // 1 generates Z6

  const FiniteAlgebra n5 = load("n5");
  const Element gens[] = {1, 3};  // a, c
  const Subalgebra s = subalgebra_generated(n5, gens);
  // a \/ c = 1 and a /\ c = 0, so the sublattice is {0, a, c, 1}.
  EXPECT_EQ(s.embedding, (ElementMap{0, 1, 3, 4}));
  EXPECT_TRUE(is_homomorphism(s.algebra, n5, s.embedding));

  Signature unary({{"s", 1}});
  FiniteAlgebra cycle("C4", unary, 4, {{1, 2, 3, 0}});
  EXPECT_THROW(subalgebra_generated(cycle, {}), ValidationError);
}

TEST(Algebra, SubalgebraPropertiesOnRandomAlgebras) {
  std::mt19937 rng(20261016);
  Signature sig({{"f", 2}, {"g", 1}});
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const FiniteAlgebra a = random_algebra(rng, n, sig);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    const Element g1 = pick(rng), g2 = pick(rng);

    const Element one[] = {g1};
    const Subalgebra s1 = subalgebra_generated(a, one);
    // Idempotent: regenerating from the subuniverse gives it back.
    const Subalgebra again = subalgebra_generated(a, s1.embedding);
    EXPECT_EQ(again.embedding, s1.embedding);
    // Monotone in the generators.
    const Element two[] = {g1, g2};
    const Subalgebra s2 = subalgebra_generated(a, two);
    for (Element e : s1.embedding)
      EXPECT_TRUE(std::binary_search(s2.embedding.begin(), s2.embedding.end(), e));
    EXPECT_TRUE(is_homomorphism(s1.algebra, a, s1.embedding));
  }
}

TEST(Algebra, QuotientAndProjection) {
  const FiniteAlgebra z6 = load("z6");
  const Congruence mod3 = parse_partition("{0,3|1,4|2,5}", 6);
  const Quotient q = quotient(z6, mod3);
  EXPECT_EQ(q.algebra.size(), 3u);
  EXPECT_TRUE(q.algebra.same_structure(ring_mod(3)));
  EXPECT_EQ(q.projection, (ElementMap{0, 1, 2, 0, 1, 2}));
  EXPECT_TRUE(is_homomorphism(z6, q.algebra, q.projection));
  EXPECT_THROW(quotient(z6, parse_partition("{0,1}", 6)), ValidationError);
}

TEST(Algebra, HomomorphismCheck) {
  const FiniteAlgebra z4 = load("z4");
  const FiniteAlgebra z2 = load("z2");
  EXPECT_TRUE(is_homomorphism(z4, z2, ElementMap{0, 1, 0, 1}));
  EXPECT_FALSE(is_homomorphism(z4, z2, ElementMap{0, 1, 1, 0}));
}
