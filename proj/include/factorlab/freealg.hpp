#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "factorlab/algebra.hpp"
#include "factorlab/term.hpp"
#include "factorlab/variety.hpp"

namespace factorlab {

inline constexpr std::size_t kDefaultClosureBudget = 100'000;

/// F_{V(A)}(n) realized as the subalgebra of A^(A^n) generated by the n
/// coordinate projections. Element i is a vector of length |A|^n (values at
/// each point of A^n in row-major order) together with the first term found
/// to evaluate to it. Immutable once built.
class FreeAlgebra {
 public:
  const FiniteAlgebra& base() const noexcept { return base_; }
  std::size_t rank() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  /// |A|^rank, the length of every carrier vector.
  std::size_t points() const noexcept { return points_; }
  std::size_t size() const noexcept { return witnesses_.size(); }

  std::span<const Element> vector(Element i) const {
    return {carrier_.data() + static_cast<std::size_t>(i) * points_, points_};
  }
  /// A term over variables() whose pointwise evaluation is vector(i); of
  /// least depth among the terms the closure discovered.
  const Term& witness(Element i) const { return witnesses_[i]; }
  std::size_t witness_depth(Element i) const { return depth_[i]; }
  /// Indices of the free generators, one per variable.
  const std::vector<Element>& generators() const noexcept { return generators_; }

  std::optional<Element> find(std::span<const Element> vec) const;
  /// Pointwise application of operation `op`.
  Element apply(std::size_t op, std::span<const Element> args) const;
  Element eval_closed(const Term& t) const;

  /// Materializes the operation tables. Throws ResourceError when a table
  /// would exceed `table_budget` entries.
  FiniteAlgebra as_algebra(std::size_t table_budget = std::size_t{1} << 24) const;

 private:
  friend FreeAlgebra free_algebra(const FiniteAlgebra&, std::size_t, std::size_t);
  FreeAlgebra(FiniteAlgebra base, std::vector<std::string> variables);

  std::optional<Element> insert(std::vector<Element> vec, Term witness, std::size_t depth);
  static std::string key_of(std::span<const Element> vec);

  FiniteAlgebra base_;
  std::vector<std::string> variables_;
  std::size_t points_;
  std::vector<Element> carrier_;
  std::vector<Term> witnesses_;
  std::vector<std::size_t> depth_;
  std::vector<Element> generators_;
  std::unordered_map<std::string, Element> index_;
};

/// Builds F(x) for rank 1, F(x,y) for rank 2 and F(x1..xn) otherwise.
/// Elements are discovered breadth-first by term depth: generators, then
/// constants in signature order, then each round applies the operations in
/// signature order to argument tuples in lexicographic order. Throws
/// ResourceError once the carrier would exceed `budget` elements.
FreeAlgebra free_algebra(const FiniteAlgebra& a, std::size_t rank,
                         std::size_t budget = kDefaultClosureBudget);

inline const Term& element_term(const FreeAlgebra& f, Element e) { return f.witness(e); }

/// P = F(x) × F(x,y) with the distinguished arguments ⟨x,x⟩, ⟨x,y⟩ and
/// z⃗ = [0⃗ in F(x), 1⃗ in F(x,y)].
struct FreePairContext {
  FreeAlgebra f1;
  FreeAlgebra f2;
  FiniteAlgebra product;
  Element x;
  Element y;
  std::vector<Element> z;

  ProductEncoding encoding() const { return {f2.size()}; }
};

FreePairContext free_pair_context(const VarietyContext& ctx,
                                  std::size_t budget = kDefaultClosureBudget);

}  // namespace factorlab
