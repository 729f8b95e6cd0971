#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factorlab/term.hpp"

namespace factorlab {

/// Universe elements are indices 0..n-1 relative to an owning algebra.
using Element = std::uint32_t;
/// A total map between universes, indexed by source element.
using ElementMap = std::vector<Element>;

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

/// Ordered operation symbols plus the length l of the 0/1 tuples.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> symbols, std::size_t tuple_length = 1);

  const std::vector<OpSymbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const OpSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::size_t tuple_length() const noexcept { return tuple_length_; }
  bool has_constants() const;

  /// Looks a symbol up by name. Alternate spellings of the infix symbols
  /// ("*" and "·", "/\" and "∧", "\/" and "∨") resolve to each other.
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<OpSymbol> symbols_;
  std::size_t tuple_length_ = 1;
};

/// A finite algebra on {0..n-1}. Each operation is a dense row-major table:
/// for arity k the entry for (a1..ak) sits at a1*n^(k-1) + ... + ak.
/// Immutable after construction.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, Signature signature, std::size_t size,
                std::vector<std::vector<Element>> tables);

  const std::string& name() const noexcept { return name_; }
  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return size_; }
  std::span<const Element> table(std::size_t op) const { return tables_[op]; }
  const std::vector<std::vector<Element>>& tables() const noexcept { return tables_; }

  Element apply(std::size_t op, std::span<const Element> args) const;
  Element apply(std::size_t op, Element a, Element b) const {
    return tables_[op][a * size_ + b];
  }
  Element constant(std::size_t op) const { return tables_[op][0]; }

  /// Same signature, size and tables; names are ignored.
  bool same_structure(const FiniteAlgebra& other) const;
  FiniteAlgebra renamed(std::string name) const;

 private:
  std::string name_;
  Signature signature_;
  std::size_t size_;
  std::vector<std::vector<Element>> tables_;
};

using Environment = std::map<std::string, Element, std::less<>>;

/// Evaluates t in A by structural recursion. Throws ValidationError on an
/// unbound variable, unknown symbol or arity mismatch.
Element eval_term(const FiniteAlgebra& a, const Term& t, const Environment& env);

/// Pair encoding for products: index = first * |B| + second.
struct ProductEncoding {
  std::size_t right_size;

  Element encode(Element first, Element second) const {
    return static_cast<Element>(first * right_size + second);
  }
  Element first(Element p) const { return static_cast<Element>(p / right_size); }
  Element second(Element p) const { return static_cast<Element>(p % right_size); }
};

FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);

struct Subalgebra {
  FiniteAlgebra algebra;
  ElementMap embedding;  // sub index -> element of the parent
};

/// Least subuniverse containing `generators` and every constant, re-indexed
/// in increasing order of parent index.
Subalgebra subalgebra_generated(const FiniteAlgebra& a,
                                std::span<const Element> generators);

class Congruence;

struct Quotient {
  FiniteAlgebra algebra;
  ElementMap projection;  // element -> class index
};

/// Classes are numbered by increasing least representative.
Quotient quotient(const FiniteAlgebra& a, const Congruence& theta);

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                     std::span<const Element> h);

}  // namespace factorlab
