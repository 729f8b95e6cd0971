#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "factorlab/algebra.hpp"

namespace factorlab {

/// An equivalence on {0..n-1} in canonical form: rep[i] is the least element
/// of i's class. Two congruences are equal iff their arrays are equal.
///
/// The type only guarantees the canonical-equivalence invariant; whether it
/// is compatible with a particular algebra is checked by is_compatible().
class Congruence {
 public:
  Congruence() = default;

  /// Canonicalizes an arbitrary class labelling (label[i] == label[j] iff i~j).
  static Congruence from_labels(std::span<const std::size_t> labels);
  /// Throws ValidationError if `rep` is not already canonical.
  static Congruence from_reps(std::vector<Element> rep);
  static Congruence identity(std::size_t n);
  static Congruence total(std::size_t n);

  std::size_t universe_size() const noexcept { return rep_.size(); }
  const std::vector<Element>& reps() const noexcept { return rep_; }
  Element rep(Element i) const { return rep_[i]; }
  bool related(Element a, Element b) const { return rep_[a] == rep_[b]; }
  std::size_t class_count() const;
  /// Classes ordered by least element, each sorted ascending.
  std::vector<std::vector<Element>> classes() const;

  bool is_identity() const;
  bool is_total() const;
  /// Containment as relations.
  bool subset_of(const Congruence& other) const;

  friend bool operator==(const Congruence&, const Congruence&) = default;
  /// Sort key: (number of classes, lexicographic rep array).
  friend std::strong_ordering operator<=>(const Congruence& a, const Congruence& b);

 private:
  explicit Congruence(std::vector<Element> rep) : rep_(std::move(rep)) {}
  std::vector<Element> rep_;
};

/// Renders classes as {0,3|1,4|2,5}.
std::string to_string(const Congruence& c);
/// Parses the class-list syntax (braces optional). Elements not mentioned
/// become singletons.
Congruence parse_partition(std::string_view text, std::size_t n);

/// A binary relation on {0..n-1} as a dense bit matrix.
class Relation {
 public:
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}
  static Relation of(const Congruence& c);

  std::size_t universe_size() const noexcept { return n_; }
  bool contains(Element a, Element b) const { return bits_[a * n_ + b] != 0; }
  void insert(Element a, Element b) { bits_[a * n_ + b] = 1; }
  bool is_total() const;
  std::size_t pair_count() const;
  /// The relation as a Congruence, if it is an equivalence.
  std::optional<Congruence> as_equivalence() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_;
  std::vector<unsigned char> bits_;
};

bool is_compatible(const FiniteAlgebra& a, const Congruence& c);

/// Cg(a, b) by a worklist over basic translations of the operation tables.
Congruence principal_congruence(const FiniteAlgebra& alg, Element a, Element b);

inline constexpr std::size_t kDefaultCongruenceBound = 8;

/// The full congruence lattice as the join-closure of principal congruences
/// and the identity, sorted by operator<=>. Throws ResourceError when
/// |A| > max_size.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a,
                                        std::size_t max_size = kDefaultCongruenceBound);

Congruence meet(const Congruence& a, const Congruence& b);
/// Transitive closure of the union.
Congruence join(const Congruence& a, const Congruence& b);
/// {(x,z) : exists y, x a y and y b z}.
Relation compose(const Congruence& a, const Congruence& b);

struct FactorPair {
  Congruence theta;
  Congruence theta_c;
};

/// Every ordered pair (t, t*) of congruences with t ∧ t* = Δ and t ∘ t* = ∇.
/// Only one composition is checked: congruences are symmetric, so
/// t* ∘ t = (t ∘ t*)^-1, which is ∇ whenever t ∘ t* is.
std::vector<FactorPair> factor_pairs(const FiniteAlgebra& a,
                                     std::size_t max_size = kDefaultCongruenceBound);

struct Decomposition {
  FiniteAlgebra first;   // A / theta
  FiniteAlgebra second;  // A / theta_c
  ElementMap iso;        // c -> (c/theta, c/theta_c) under ProductEncoding
};

/// Builds A -> A/t x A/t*. Throws std::logic_error if the map is not a
/// bijective homomorphism, which means `pair` was not a factor pair.
Decomposition decomposition_from_pair(const FiniteAlgebra& a, const FactorPair& pair);

struct CompactnessReport {
  /// Least m <= 2 with theta a join of m principal congruences.
  std::optional<std::size_t> generators_needed;
  std::vector<std::pair<Element, Element>> generators;
  /// Greedy generating set, always available on a finite algebra.
  std::vector<std::pair<Element, Element>> greedy_generators;
};

CompactnessReport compactness_report(const FiniteAlgebra& a, const Congruence& theta);

}  // namespace factorlab
