#include "factorlab/positivize.hpp"

#include <algorithm>

#include "factorlab/congruence.hpp"
#include "tuples.hpp"

namespace factorlab {

namespace {

std::vector<Element> distinguished_slots(const CompiledFormula& cf, const FreePairContext& fp) {
  std::vector<Element> slots(cf.slot_count(), 0);
  slots[0] = fp.x;
  slots[1] = fp.y;
  std::copy(fp.z.begin(), fp.z.end(), slots.begin() + 2);
  return slots;
}

std::string describe(const FreePairContext& fp, Element p) {
  const auto enc = fp.encoding();
  return "<" + to_string(fp.f1.witness(enc.first(p))) + ", " +
         to_string(fp.f2.witness(enc.second(p))) + ">";
}

std::string describe_assignment(const FreePairContext& fp) {
  std::string out = "x = " + describe(fp, fp.x) + ", y = " + describe(fp, fp.y);
  for (std::size_t i = 0; i < fp.z.size(); ++i)
    out += ", z" + std::to_string(i + 1) + " = " + describe(fp, fp.z[i]);
  return out;
}

std::vector<WitnessTerms> witness_terms(const FreePairContext& fp,
                                        const std::vector<Element>& witness) {
  const auto enc = fp.encoding();
  std::vector<WitnessTerms> out;
  for (Element p : witness)
    out.push_back({fp.f1.witness(enc.first(p)), fp.f2.witness(enc.second(p))});
  return out;
}

std::string render_assignment(const std::vector<Element>& values) {
  static const char* names[] = {"x", "y"};
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += i < 2 ? std::string(names[i]) : "z" + std::to_string(i - 1);
    out += "=" + std::to_string(values[i]);
  }
  return out;
}

}  // namespace

DisjunctWitness find_disjunct_witness(const ExistentialDnf& phi, const FreePairContext& fp) {
  const CompiledFormula cf(phi, fp.product.signature());
  auto slots = distinguished_slots(cf, fp);
  for (std::size_t k = 0; k < cf.disjunct_count(); ++k)
    if (auto w = cf.first_witness(fp.product, slots, k)) return {k, std::move(*w)};
  throw NoWitnessError("no witness: no disjunct of the formula holds at the distinguished "
                       "assignment in F(x) x F(x,y) (" +
                           describe_assignment(fp) + ")",
                       describe_assignment(fp));
}

std::vector<DisjunctWitness> all_disjunct_witnesses(const ExistentialDnf& phi,
                                                    const FreePairContext& fp,
                                                    std::size_t limit) {
  const CompiledFormula cf(phi, fp.product.signature());
  auto slots = distinguished_slots(cf, fp);
  std::vector<DisjunctWitness> out;
  for (std::size_t k = 0; k < cf.disjunct_count() && out.size() < limit; ++k)
    cf.for_each_witness(fp.product, slots, k, [&](const std::vector<Element>& w) {
      out.push_back({k, w});
      return out.size() < limit;
    });
  return out;
}

SubstitutionReport check_substitution(const ExistentialDnf& phi, std::size_t k,
                                      const std::vector<WitnessTerms>& witnesses,
                                      const VarietyContext& ctx) {
  SubstitutionReport report;
  const CompiledFormula cf(phi, ctx.signature());
  const auto lambda = phi.positive_indices(k);
  const std::size_t l = ctx.tuple_length();

  for (const auto& member : ctx.pool()) {
    const FiniteAlgebra& b = member.algebra;
    ++report.algebras_checked;
    const auto zeros = ctx.zeros(b);
    const auto ones = ctx.ones(b);
    std::vector<Element> slots(cf.slot_count(), 0);

    auto verify = [&](Element x, Element y, const std::vector<Element>& z, bool first_side) {
      ++report.assignments_checked;
      Environment env{{"x", x}};
      if (!first_side) env["y"] = y;
      slots[0] = x;
      slots[1] = y;
      std::copy(z.begin(), z.end(), slots.begin() + 2);
      for (std::size_t i = 0; i < witnesses.size(); ++i)
        slots[2 + l + i] =
            eval_term(b, first_side ? witnesses[i].u : witnesses[i].v, env);
      for (std::size_t j : lambda)
        if (!cf.literal_holds(b, slots, k, j)) {
          report.failures.push_back(member.algebra.name() + ": literal " + std::to_string(j) +
                                    " fails at " + (first_side ? "(x, x, 0, u(x))" : "(x, y, 1, v(x,y))") +
                                    " with x=" + std::to_string(x) +
                                    (first_side ? "" : ", y=" + std::to_string(y)));
          return;
        }
    };

    for (Element a = 0; a < b.size(); ++a) verify(a, a, zeros, true);
    for (Element a = 0; a < b.size(); ++a)
      for (Element c = 0; c < b.size(); ++c) verify(a, c, ones, false);
  }
  return report;
}

PositivizeResult positivize(const ExistentialDnf& phi, const VarietyContext& ctx,
                            const PositivizeOptions& options) {
  const FreePairContext fp = free_pair_context(ctx, options.budget);
  const DisjunctWitness found = find_disjunct_witness(phi, fp);

  PositivizeResult result{found.disjunct,
                          phi.positive_indices(found.disjunct),
                          strip_to_positive(phi, found.disjunct),
                          witness_terms(fp, found.witness),
                          {},
                          {},
                          fp.f1.size(),
                          fp.f2.size(),
                          {}};

  const CompiledFormula cf(phi, ctx.signature());
  auto slots = distinguished_slots(cf, fp);
  std::copy(found.witness.begin(), found.witness.end(), slots.begin() + 2 + ctx.tuple_length());
  for (std::size_t j = 0; j < cf.literal_count(found.disjunct); ++j)
    result.certificate.push_back({j, phi.disjuncts[found.disjunct][j].positive,
                                  cf.literal_holds(fp.product, slots, found.disjunct, j)});

  result.substitution = check_substitution(phi, found.disjunct, result.witnesses, ctx);

  if (options.all_witnesses)
    for (const auto& dw : all_disjunct_witnesses(phi, fp, options.witness_limit))
      result.alternatives.push_back({dw.disjunct, witness_terms(fp, dw.witness)});
  return result;
}

std::vector<ElementMap> surjective_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                 std::size_t limit) {
  std::vector<ElementMap> found;
  if (!(a.signature() == b.signature()) || b.size() > a.size()) return found;
  const auto& sig = a.signature();
  const std::size_t n = a.size();
  ElementMap h(n, 0);
  std::vector<std::size_t> hits(b.size(), 0);
  std::size_t distinct = 0;

  // Checks every table entry whose arguments and value are all assigned
  // (indices <= upto).
  auto consistent = [&](std::size_t upto) {
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t k = sig[op].arity;
      bool ok = true;
      std::vector<Element> image(k);
      detail::for_each_tuple(upto + 1, k, [&](std::span<const Element> args, std::size_t) {
        if (!ok) return;
        const Element v = a.apply(op, args);
        if (v > upto) return;
        for (std::size_t j = 0; j < k; ++j) image[j] = h[args[j]];
        ok = h[v] == b.apply(op, image);
      });
      if (!ok) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t i) -> void {
    if (found.size() >= limit) return;
    if (i == n) {
      if (distinct == b.size()) found.push_back(h);
      return;
    }
    if (b.size() - distinct > n - i) return;
    for (Element v = 0; v < b.size(); ++v) {
      h[i] = v;
      if (hits[v]++ == 0) ++distinct;
      if (consistent(i)) self(self, i + 1);
      if (--hits[v] == 0) --distinct;
    }
  };
  search(search, 0);
  return found;
}

namespace {

std::vector<std::vector<Element>> all_assignments(std::size_t n, std::size_t slots) {
  std::vector<std::vector<Element>> out;
  detail::for_each_tuple(n, slots, [&](std::span<const Element> t, std::size_t) {
    out.emplace_back(t.begin(), t.end());
  });
  return out;
}

bool holds_at(const CompiledFormula& cf, const FiniteAlgebra& a, const std::vector<Element>& s) {
  return cf.holds(a, s[0], s[1], std::span<const Element>(s).subspan(2));
}

}  // namespace

PreservationReport check_preservation(const PositiveExistential& psi, const VarietyContext& ctx,
                                      const PreservationCaps& caps) {
  PreservationReport report;
  const ExistentialDnf as_dnf = psi.as_dnf();
  const CompiledFormula cf(as_dnf, ctx.signature());
  const std::size_t free_slots = 2 + psi.tuple_length;
  const auto& pool = ctx.pool();

  auto check_image = [&](const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h,
                         const std::string& label) {
    ++report.homomorphisms_checked;
    std::vector<Element> image(free_slots);
    for (const auto& s : all_assignments(a.size(), free_slots)) {
      ++report.assignments_checked;
      if (!holds_at(cf, a, s)) continue;
      for (std::size_t i = 0; i < free_slots; ++i) image[i] = h[s[i]];
      if (!holds_at(cf, b, image)) {
        report.violations.push_back(
            {"image", label + ": holds in " + a.name() + " at (" + render_assignment(s) +
                          ") but fails in " + b.name() + " at (" + render_assignment(image) + ")"});
        return;
      }
    }
  };

  for (const auto& member : pool) {
    const FiniteAlgebra& a = member.algebra;
    if (a.size() > caps.homomorphism_source_cap) continue;
    for (const auto& theta : all_congruences(a, caps.homomorphism_source_cap)) {
      if (theta.is_identity()) continue;
      Quotient q = quotient(a, theta);
      check_image(a, q.algebra, q.projection, "quotient map " + a.name() + " -> " + q.algebra.name());
    }
    for (const auto& target : pool) {
      if (target.algebra.size() > a.size()) continue;
      for (const auto& h : surjective_homomorphisms(a, target.algebra, caps.maps_per_pair))
        check_image(a, target.algebra, h, "surjection " + a.name() + " -> " + target.algebra.name());
    }
  }

  for (const auto& left : pool) {
    for (const auto& right : pool) {
      const FiniteAlgebra& a = left.algebra;
      const FiniteAlgebra& b = right.algebra;
      if (a.size() * b.size() > caps.product_cap) continue;
      ++report.products_checked;
      const FiniteAlgebra p = direct_product(a, b);
      const ProductEncoding enc{b.size()};
      std::vector<std::vector<Element>> sat_a, sat_b;
      for (auto& s : all_assignments(a.size(), free_slots))
        if (holds_at(cf, a, s)) sat_a.push_back(std::move(s));
      for (auto& s : all_assignments(b.size(), free_slots))
        if (holds_at(cf, b, s)) sat_b.push_back(std::move(s));
      std::vector<Element> joint(free_slots);
      bool violated = false;
      for (const auto& sa : sat_a) {
        for (const auto& sb : sat_b) {
          ++report.assignments_checked;
          for (std::size_t i = 0; i < free_slots; ++i) joint[i] = enc.encode(sa[i], sb[i]);
          if (!holds_at(cf, p, joint)) {
            report.violations.push_back(
                {"product", "holds in " + a.name() + " at (" + render_assignment(sa) + ") and in " +
                                b.name() + " at (" + render_assignment(sb) + ") but fails in the product"});
            violated = true;
            break;
          }
        }
        if (violated) break;
      }
    }
  }
  return report;
}

}  // namespace factorlab
