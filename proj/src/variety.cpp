#include "factorlab/variety.hpp"

#include <algorithm>

#include "factorlab/congruence.hpp"
#include "factorlab/error.hpp"

namespace factorlab {

namespace {

// Pool generation enumerates congruences of the generator too, which may be
// larger than the interactive default bound.
constexpr std::size_t kPoolCongruenceBound = 64;

std::vector<Element> eval_closed(const FiniteAlgebra& a, const std::vector<Term>& terms) {
  std::vector<Element> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(eval_term(a, t, {}));
  return out;
}

}  // namespace

VarietyContext::VarietyContext(FiniteAlgebra generator, std::vector<Term> zero_terms,
                               std::vector<Term> one_terms)
    : generator_(std::move(generator)),
      zero_terms_(std::move(zero_terms)),
      one_terms_(std::move(one_terms)) {
  const std::size_t l = generator_.signature().tuple_length();
  if (zero_terms_.size() != l || one_terms_.size() != l)
    throw ValidationError("0 and 1 term lists must have length l = " + std::to_string(l));
  for (const auto* list : {&zero_terms_, &one_terms_})
    for (const auto& t : *list) {
      if (!t.is_closed()) throw ValidationError("term '" + to_string(t) + "' is not closed");
      eval_term(generator_, t, {});
    }
  pool_.push_back({generator_, generator_.name()});
}

std::vector<Element> VarietyContext::zeros(const FiniteAlgebra& a) const {
  return eval_closed(a, zero_terms_);
}

std::vector<Element> VarietyContext::ones(const FiniteAlgebra& a) const {
  return eval_closed(a, one_terms_);
}

VarietyContext VarietyContext::with_pool(std::vector<PoolMember> pool) const {
  VarietyContext copy = *this;
  copy.pool_ = std::move(pool);
  return copy;
}

std::vector<PoolMember> generate_pool(const VarietyContext& ctx, std::size_t max_size,
                                      std::size_t depth) {
  std::vector<PoolMember> pool{{ctx.generator(), ctx.generator().name()}};
  auto try_add = [&](FiniteAlgebra alg, std::string recipe, std::vector<PoolMember>& out) {
    if (alg.size() > max_size) return;
    auto dup = [&](const PoolMember& m) { return m.algebra.same_structure(alg); };
    if (std::any_of(pool.begin(), pool.end(), dup) || std::any_of(out.begin(), out.end(), dup))
      return;
    out.push_back({std::move(alg), std::move(recipe)});
  };

  for (std::size_t round = 0; round < depth; ++round) {
    std::vector<PoolMember> added;
    const std::size_t current = pool.size();
    for (std::size_t i = 0; i < current; ++i) {
      const FiniteAlgebra& a = pool[i].algebra;
      if (a.size() <= kPoolCongruenceBound) {
        for (const auto& theta : all_congruences(a, kPoolCongruenceBound)) {
          if (theta.is_identity()) continue;
          Quotient q = quotient(a, theta);
          std::string recipe = "quotient(" + pool[i].recipe + ", " + to_string(theta) + ")";
          try_add(q.algebra.renamed(recipe), recipe, added);
        }
      }
      if (a.signature().has_constants()) {
        Subalgebra s = subalgebra_generated(a, {});
        std::string recipe = "sub(" + pool[i].recipe + ", {})";
        try_add(s.algebra.renamed(recipe), recipe, added);
      }
      for (Element g = 0; g < a.size(); ++g) {
        const Element gens[] = {g};
        Subalgebra s = subalgebra_generated(a, gens);
        if (s.algebra.size() == a.size()) continue;
        std::string recipe = "sub(" + pool[i].recipe + ", {" + std::to_string(g) + "})";
        try_add(s.algebra.renamed(recipe), recipe, added);
      }
    }
    for (std::size_t i = 0; i < current; ++i)
      for (std::size_t j = 0; j < current; ++j) {
        if (pool[i].algebra.size() * pool[j].algebra.size() > max_size) continue;
        std::string recipe = "product(" + pool[i].recipe + ", " + pool[j].recipe + ")";
        try_add(direct_product(pool[i].algebra, pool[j].algebra).renamed(recipe), recipe,
                added);
      }
    if (added.empty()) break;
    for (auto& m : added) pool.push_back(std::move(m));
  }
  return pool;
}

ZeroOneReport verify_zero_one_condition(const VarietyContext& ctx) {
  ZeroOneReport report;
  for (const auto& member : ctx.pool()) {
    ++report.algebras_checked;
    if (ctx.zeros(member.algebra) == ctx.ones(member.algebra) && member.algebra.size() != 1)
      report.violations.push_back({member.algebra.name(), member.algebra.size()});
  }
  return report;
}

}  // namespace factorlab
