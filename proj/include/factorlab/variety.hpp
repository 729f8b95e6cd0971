#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "factorlab/algebra.hpp"
#include "factorlab/term.hpp"

namespace factorlab {

/// A member of V(generator) together with how it was built from the
/// generator (product, quotient and subalgebra steps).
struct PoolMember {
  FiniteAlgebra algebra;
  std::string recipe;
};

/// The variety V(generator) with closed terms 0⃗ and 1⃗ of length l, and a
/// finite sample of its members.
class VarietyContext {
 public:
  /// Throws ValidationError unless both term lists have length l (from the
  /// generator's signature) and every term is closed and well-typed.
  VarietyContext(FiniteAlgebra generator, std::vector<Term> zero_terms,
                 std::vector<Term> one_terms);

  const FiniteAlgebra& generator() const noexcept { return generator_; }
  const Signature& signature() const noexcept { return generator_.signature(); }
  std::size_t tuple_length() const noexcept { return zero_terms_.size(); }
  const std::vector<Term>& zero_terms() const noexcept { return zero_terms_; }
  const std::vector<Term>& one_terms() const noexcept { return one_terms_; }
  const std::vector<PoolMember>& pool() const noexcept { return pool_; }

  /// Values of 0⃗ and 1⃗ in an algebra of the same signature.
  std::vector<Element> zeros(const FiniteAlgebra& a) const;
  std::vector<Element> ones(const FiniteAlgebra& a) const;

  VarietyContext with_pool(std::vector<PoolMember> pool) const;

 private:
  FiniteAlgebra generator_;
  std::vector<Term> zero_terms_;
  std::vector<Term> one_terms_;
  std::vector<PoolMember> pool_;
};

struct PoolOptions {
  std::size_t max_size = 8;
  std::size_t depth = 2;
};

/// Closes {generator} under quotients, subalgebras generated by at most one
/// element, and binary products for `depth` rounds. Algebras larger than
/// max_size are dropped (the generator itself is always kept) and exact
/// duplicates of an existing member's tables are skipped. Order is
/// deterministic: generator first, then members in discovery order.
std::vector<PoolMember> generate_pool(const VarietyContext& ctx, std::size_t max_size,
                                      std::size_t depth);

struct ZeroOneViolation {
  std::string algebra;
  std::size_t size;
};

/// Sampled check of 0⃗ = 1⃗ → x = y on the pool. Passing is evidence for
/// the quasi-identity, never a proof for all of V.
struct ZeroOneReport {
  std::size_t algebras_checked = 0;
  std::vector<ZeroOneViolation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

ZeroOneReport verify_zero_one_condition(const VarietyContext& ctx);

}  // namespace factorlab
