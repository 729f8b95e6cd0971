#include <gtest/gtest.h>

#include <random>

#include "factorlab/error.hpp"
#include "factorlab/formula.hpp"
#include "support.hpp"

using namespace factorlab;
using namespace factorlab::testing;

namespace {

const Signature& ring_sig() {
  static const Signature sig({{"+", 2}, {"*", 2}, {"0", 0}, {"1", 0}});
  return sig;
}

const Signature& lattice_sig() {
  static const Signature sig({{"/\\", 2}, {"\\/", 2}, {"0", 0}, {"1", 0}});
  return sig;
}

Term random_term(std::mt19937& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> coin(0, 5);
  const int c = coin(rng);
  if (depth == 0 || c < 2) {
    if (c == 0) return Term::apply(rng() % 2 ? "0" : "1");
    return Term::variable(vars[rng() % vars.size()]);
  }
  return Term::apply(rng() % 2 ? "+" : "*",
                     {random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)});
}

ExistentialDnf random_formula(std::mt19937& rng, std::size_t bound) {
  ExistentialDnf phi;
  std::vector<std::string> vars{"x", "y", "z1"};
  for (std::size_t i = 0; i < bound; ++i) {
    phi.bound_vars.push_back("w" + std::to_string(i + 1));
    vars.push_back(phi.bound_vars.back());
  }
  const std::size_t disjuncts = 1 + rng() % 3;
  for (std::size_t k = 0; k < disjuncts; ++k) {
    std::vector<Literal> conj;
    const std::size_t lits = 1 + rng() % 3;
    for (std::size_t j = 0; j < lits; ++j)
      conj.push_back({random_term(rng, vars, 2), random_term(rng, vars, 2), rng() % 3 != 0});
    phi.disjuncts.push_back(std::move(conj));
  }
  return phi;
}

}  // namespace

TEST(Syntax, ParsesDnfShape) {
  const auto phi = parse_formula("exists w . (x = y and w = z1) or (x + (z1 * y) = y and w != z1)",
                                 ring_sig(), 1);
  EXPECT_EQ(phi.bound_vars, (std::vector<std::string>{"w"}));
  ASSERT_EQ(phi.disjuncts.size(), 2u);
  EXPECT_EQ(phi.disjuncts[1].size(), 2u);
  EXPECT_FALSE(phi.disjuncts[1][1].positive);
  EXPECT_EQ(phi.positive_indices(1), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(phi.has_negative_literal());
  EXPECT_EQ(phi.disjuncts[1][0].lhs,
            Term::apply("+", {Term::variable("x"),
                              Term::apply("*", {Term::variable("z1"), Term::variable("y")})}));
}

TEST(Syntax, UnicodeSpellings) {
  const auto ascii = parse_formula("exists w . x \\/ z1 = y \\/ z1 and w != x", lattice_sig(), 1);
  const auto uni = parse_formula("∃ w . x ∨ z1 = y ∨ z1 and w ≠ x", lattice_sig(), 1);
  EXPECT_EQ(ascii, uni);
  const auto dot = parse_formula("z1 · x = z1 · y", ring_sig(), 1);
  EXPECT_EQ(dot, parse_formula("z1 * x = z1 * y", ring_sig(), 1));
}

TEST(Syntax, ParenthesizedLiteralVersusGroup) {
  const auto a = parse_formula("(x + y) = y", ring_sig(), 1);
  ASSERT_EQ(a.disjuncts.size(), 1u);
  EXPECT_EQ(a.disjuncts[0][0].lhs.name, "+");
  const auto b = parse_formula("(x = y)", ring_sig(), 1);
  EXPECT_EQ(b.disjuncts[0].size(), 1u);
  const auto c = parse_formula("((x + y) * y = x and true)", ring_sig(), 1);
  EXPECT_EQ(c.disjuncts[0].size(), 1u);
}

TEST(Syntax, Comments) {
  const auto phi = parse_formula("# leading comment\nx = y # trailing\n", ring_sig(), 1);
  EXPECT_EQ(phi.disjuncts.size(), 1u);
}

TEST(Syntax, RejectsOutsideTheFragment) {
  auto message = [](const char* text) {
    try {
      parse_formula(text, ring_sig(), 1);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(message("forall w . x = w").find("not existential"), std::string::npos);
  EXPECT_NE(message("not (x = y)").find("negation"), std::string::npos);
  EXPECT_NE(message("(x = y or y = x) and x = x").find("DNF"), std::string::npos);
  EXPECT_NE(message("x + y * z1 = y").find("parentheses"), std::string::npos);
  EXPECT_NE(message("x = q").find("free variable 'q'"), std::string::npos);
  EXPECT_NE(message("exists x . x = y").find("reserved"), std::string::npos);
  EXPECT_NE(message("f(x) = y").find("unknown symbol"), std::string::npos);
  EXPECT_NE(message("x = y and").find("at offset"), std::string::npos);
  EXPECT_NE(message("x = z2").find("free variable"), std::string::npos);
  // z2 is a role once the tuple length is 2.
  EXPECT_NO_THROW(parse_formula("x + z2 = y", ring_sig(), 2));
}

TEST(Syntax, ParseErrorCarriesOffset) {
  try {
    parse_formula("x = y and ?", ring_sig(), 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
  }
}

TEST(Syntax, RoundTripOnRandomFormulas) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const ExistentialDnf phi = random_formula(rng, trial % 3);
    const std::string text = to_string(phi);
    EXPECT_EQ(parse_formula(text, ring_sig(), 1), phi) << text;
  }
}

TEST(Syntax, RoundTripOnFixtures) {
  const VarietyContext ring = context("z2");
  for (const char* stem : {"ring-dfc", "ring-idempotent", "ring-mixed", "equality"}) {
    const auto phi = formula(stem, ring);
    EXPECT_EQ(parse_formula(to_string(phi), ring.signature(), 1), phi) << stem;
  }
  const VarietyContext lat = context("chain3");
  for (const char* stem : {"lattice-dfc", "lattice-mixed", "lattice-positive"}) {
    const auto phi = formula(stem, lat);
    EXPECT_EQ(parse_formula(to_string(phi), lat.signature(), 1), phi) << stem;
  }
}

TEST(Syntax, StripToPositive) {
  const auto phi = parse_formula("exists w . (x = y and w = z1) or (x != y and w != z1)",
                                 ring_sig(), 1);
  const PositiveExistential p0 = strip_to_positive(phi, 0);
  EXPECT_TRUE(p0.all_positive());
  EXPECT_EQ(p0.literals.size(), 2u);
  EXPECT_FALSE(p0.warning);

  const PositiveExistential p1 = strip_to_positive(phi, 1);
  EXPECT_TRUE(p1.empty_conjunction());
  EXPECT_TRUE(p1.warning);
  EXPECT_EQ(to_string(p1), "exists w . (true)");
  // The constantly-true formula reparses.
  const auto back = parse_formula(to_string(p1), ring_sig(), 1);
  ASSERT_EQ(back.disjuncts.size(), 1u);
  EXPECT_TRUE(back.disjuncts[0].empty());
  EXPECT_TRUE(eval_dnf(ring_mod(3), back, 0, 1, std::vector<Element>{2}));

  EXPECT_THROW(strip_to_positive(phi, 2), ValidationError);
}

TEST(Syntax, CompiledMatchesTreeWalk) {
  std::mt19937 rng(5);
  const FiniteAlgebra z4 = ring_mod(4);
  for (int trial = 0; trial < 100; ++trial) {
    const ExistentialDnf phi = random_formula(rng, trial % 3);
    const CompiledFormula cf(phi, ring_sig());
    for (Element x = 0; x < 4; ++x)
      for (Element y = 0; y < 4; ++y) {
        const std::vector<Element> z{static_cast<Element>(rng() % 4)};
        ASSERT_EQ(cf.holds(z4, x, y, z), naive_holds(z4, phi, x, y, z)) << to_string(phi);
      }
  }
}

TEST(Syntax, AtomicFormulasAreCoordinatewise) {
  std::mt19937 rng(8);
  const FiniteAlgebra a = ring_mod(2), b = ring_mod(3);
  const FiniteAlgebra p = direct_product(a, b);
  const ProductEncoding enc{3};
  for (int trial = 0; trial < 50; ++trial) {
    ExistentialDnf lit;
    lit.disjuncts = {{{random_term(rng, {"x", "y", "z1"}, 3),
                       random_term(rng, {"x", "y", "z1"}, 3), true}}};
    for (Element u = 0; u < 6; ++u)
      for (Element v = 0; v < 6; ++v)
        for (Element w = 0; w < 6; ++w) {
          const bool in_p = eval_dnf(p, lit, u, v, std::vector<Element>{w});
          const bool in_a = eval_dnf(a, lit, enc.first(u), enc.first(v),
                                     std::vector<Element>{enc.first(w)});
          const bool in_b = eval_dnf(b, lit, enc.second(u), enc.second(v),
                                     std::vector<Element>{enc.second(w)});
          ASSERT_EQ(in_p, in_a && in_b);
        }
  }
}

TEST(Syntax, ProductEvaluationMatchesMaterializedProduct) {
  std::mt19937 rng(13);
  const FiniteAlgebra algebras[] = {ring_mod(2), ring_mod(3), ring_mod(4), ring_mod(6)};
  for (int trial = 0; trial < 30; ++trial) {
    const ExistentialDnf phi = random_formula(rng, trial % 2);
    const FiniteAlgebra& a = algebras[rng() % 4];
    const FiniteAlgebra& b = algebras[rng() % 4];
    if (a.size() * b.size() > 36) continue;
    const FiniteAlgebra p = direct_product(a, b);
    const ProductEncoding enc{b.size()};
    for (int sample = 0; sample < 20; ++sample) {
      const Element l1 = rng() % a.size(), l2 = rng() % b.size();
      const Element r1 = rng() % a.size(), r2 = rng() % b.size();
      const std::vector<Element> za{static_cast<Element>(rng() % a.size())};
      const std::vector<Element> zb{static_cast<Element>(rng() % b.size())};
      const bool direct = eval_in_product(a, b, phi, {l1, l2}, {r1, r2}, za, zb);
      const std::vector<Element> zp{enc.encode(za[0], zb[0])};
      EXPECT_EQ(direct, naive_holds(p, phi, enc.encode(l1, l2), enc.encode(r1, r2), zp));
    }
  }
}
