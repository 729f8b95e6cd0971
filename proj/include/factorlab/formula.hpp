#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factorlab/algebra.hpp"
#include "factorlab/term.hpp"

namespace factorlab {

/// An equation s = t, or its negation s != t.
struct Literal {
  Term lhs;
  Term rhs;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// ∃w⃗ ⋁_k ⋀_j literal_kj over the free variables x, y, z1..zl.
struct ExistentialDnf {
  std::size_t tuple_length = 1;
  std::vector<std::string> bound_vars;
  std::vector<std::vector<Literal>> disjuncts;

  /// Indices of the positive literals of disjunct k (the set Λ_k).
  std::vector<std::size_t> positive_indices(std::size_t k) const;
  bool has_negative_literal() const;

  friend bool operator==(const ExistentialDnf&, const ExistentialDnf&) = default;
};

/// ∃w⃗ followed by a single conjunction of equations. The invariant that
/// every literal is positive is checked by all_positive() rather than
/// enforced, so tests can hand-build ill-formed instances.
struct PositiveExistential {
  std::size_t tuple_length = 1;
  std::vector<std::string> bound_vars;
  std::vector<Literal> literals;
  /// Set when the source disjunct had no positive literal, making this the
  /// constantly true formula.
  std::optional<std::string> warning;

  bool all_positive() const;
  bool empty_conjunction() const noexcept { return literals.empty(); }
  ExistentialDnf as_dnf() const;
};

/// Reserved free-variable names: x, y, z1..zl.
std::vector<std::string> role_names(std::size_t tuple_length);

/// Parses the formula grammar:
///   formula := ["exists" ident+ "."] dnf
///   dnf     := conj { "or" conj }
///   conj    := item { "and" item }
///   item    := "(" conj ")" | "true" | term ("=" | "!=") term
///   term    := primary [ infix primary ]
///   primary := "(" term ")" | ident [ "(" term { "," term } ")" ]
/// where infix is one of + * · /\ \/ ∧ ∨ and "#" starts a line comment.
/// Mixing infix applications requires explicit parentheses.
ExistentialDnf parse_formula(std::string_view text, const Signature& sig,
                             std::size_t tuple_length);

/// Parses a term with the same lexical rules; every identifier that is not
/// a constant symbol becomes a variable.
Term parse_term(std::string_view text, const Signature& sig);

std::string to_string(const Literal& lit);
std::string to_string(const ExistentialDnf& phi);
std::string to_string(const PositiveExistential& psi);

/// Φ′: the positive literals of disjunct k, same bound variables and order.
PositiveExistential strip_to_positive(const ExistentialDnf& phi, std::size_t k);

/// A formula lowered to slot-indexed postfix code for the evaluation hot
/// loops. Slots are x, y, z1..zl, then the bound variables in order.
class CompiledFormula {
 public:
  CompiledFormula(const ExistentialDnf& phi, const Signature& sig);

  std::size_t tuple_length() const noexcept { return tuple_length_; }
  std::size_t bound_count() const noexcept { return bound_count_; }
  std::size_t slot_count() const noexcept { return 2 + tuple_length_ + bound_count_; }
  std::size_t disjunct_count() const noexcept { return disjuncts_.size(); }
  std::size_t literal_count(std::size_t k) const { return disjuncts_[k].size(); }

  /// True iff some disjunct has a witness. Disjuncts are tried in order,
  /// witnesses lexicographically, literals short-circuit.
  bool holds(const FiniteAlgebra& a, Element x, Element y,
             std::span<const Element> z) const;

  /// The first w⃗ (lexicographic, w1 most significant) satisfying every
  /// literal of disjunct k. The free slots of `slots` must be filled in;
  /// the bound slots are overwritten.
  std::optional<std::vector<Element>> first_witness(const FiniteAlgebra& a,
                                                    std::span<Element> slots,
                                                    std::size_t k) const;

  /// Calls f(w⃗) for every satisfying witness of disjunct k in lexicographic
  /// order until f returns false.
  template <typename F>
  void for_each_witness(const FiniteAlgebra& a, std::span<Element> slots, std::size_t k,
                        F&& f) const;

  /// Evaluates a single literal with every slot assigned.
  bool literal_holds(const FiniteAlgebra& a, std::span<const Element> slots,
                     std::size_t k, std::size_t j) const;

 private:
  struct CompiledLiteral {
    std::vector<std::int32_t> lhs;
    std::vector<std::int32_t> rhs;
    bool positive;
    bool uses_bound;
  };

  Element run(const FiniteAlgebra& a, const std::vector<std::int32_t>& code,
              std::span<const Element> slots) const;
  bool check(const FiniteAlgebra& a, const CompiledLiteral& lit,
             std::span<const Element> slots) const;
  bool free_part_holds(const FiniteAlgebra& a, std::span<const Element> slots,
                       std::size_t k) const;
  bool bound_part_holds(const FiniteAlgebra& a, std::span<const Element> slots,
                        std::size_t k) const;

  std::size_t tuple_length_;
  std::size_t bound_count_;
  std::vector<std::vector<CompiledLiteral>> disjuncts_;
};

template <typename F>
void CompiledFormula::for_each_witness(const FiniteAlgebra& a, std::span<Element> slots,
                                       std::size_t k, F&& f) const {
  if (!free_part_holds(a, slots, k)) return;
  const std::size_t base = 2 + tuple_length_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < bound_count_; ++i) slots[base + i] = 0;
  while (true) {
    if (bound_part_holds(a, slots, k)) {
      auto bound = slots.subspan(base, bound_count_);
      std::vector<Element> w(bound.begin(), bound.end());
      if (!f(w)) return;
    }
    bool carry = true;
    for (std::size_t j = bound_count_; j > 0 && carry;) {
      --j;
      carry = ++slots[base + j] >= n;
      if (carry) slots[base + j] = 0;
    }
    if (carry) return;
  }
}

/// True iff A satisfies Φ at (x, y, z⃗).
bool eval_dnf(const FiniteAlgebra& a, const ExistentialDnf& phi, Element x, Element y,
              std::span<const Element> z);

/// Φ evaluated in A×B at (⟨a,b⟩, ⟨c,d⟩, [z_a, z_b]) under the pair encoding.
bool eval_in_product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                     const ExistentialDnf& phi, std::pair<Element, Element> left,
                     std::pair<Element, Element> right, std::span<const Element> z_a,
                     std::span<const Element> z_b);

}  // namespace factorlab
