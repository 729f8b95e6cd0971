#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "factorlab/congruence.hpp"
#include "factorlab/formula.hpp"
#include "factorlab/variety.hpp"

namespace factorlab {

/// A central tuple e⃗ of C for an ordered factor pair (θ, θ*).
///
/// Orientation: e_i is θ-related to 0_i and θ*-related to 1_i, so the
/// decomposition C -> C/θ × C/θ* sends e⃗ to [0⃗, 1⃗], and the relation a=c on
/// the first coordinate is θ.
struct CentralElement {
  std::vector<Element> e;
  FactorPair pair;
  Decomposition decomposition;
};

/// One central tuple per ordered factor pair of C. Throws std::logic_error
/// if some pair does not determine a unique tuple.
std::vector<CentralElement> central_elements(const FiniteAlgebra& c, const VarietyContext& ctx,
                                             std::size_t max_size = kDefaultCongruenceBound);

struct DfcCaps {
  /// Only pool pairs with |A|·|B| <= product_cap are tested.
  std::size_t product_cap = 64;
  /// Worst-case literal evaluations allowed for one pool pair; pairs over
  /// the budget are skipped and listed in the report.
  std::uint64_t evaluation_budget = 10'000'000;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

enum class Direction {
  Forward,   // ⇒ fails: the formula holds but a != c
  Backward,  // ⇐ fails: a == c but the formula does not hold
};

struct Counterexample {
  std::string left;
  std::string right;
  Element a, b, c, d;
  Direction direction;
};

struct SkippedPair {
  std::string left;
  std::string right;
  std::string reason;
};

struct DfcReport {
  std::string formula;
  std::size_t pairs_tested = 0;
  std::uint64_t evaluations = 0;
  std::vector<SkippedPair> skipped;
  std::vector<Counterexample> counterexamples;
  bool passed() const noexcept { return counterexamples.empty(); }
};

/// Exhaustive check of A×B ⊨ Φ(⟨a,b⟩, ⟨c,d⟩, [0⃗^A, 1⃗^B]) ⟺ a = c over every
/// ordered pool pair within the caps. Pairs are scanned in parallel;
/// counterexamples are reported in pool-pair order, then (a, b, c, d).
DfcReport verify_dfc(const ExistentialDnf& phi, const VarietyContext& ctx,
                     const DfcCaps& caps = {});
DfcReport verify_dfc(const PositiveExistential& psi, const VarietyContext& ctx,
                     const DfcCaps& caps = {});

/// θ_{Φ,e⃗} = {(a, c) : C ⊨ Φ(a, c, e⃗)} compared with the pair's θ.
struct CentralCongruenceReport {
  Relation relation;
  std::optional<Congruence> congruence;  // set when the relation is a congruence of C
  Congruence expected;                   // ce.pair.theta
  bool matches = false;
};

CentralCongruenceReport congruence_of_central(const FiniteAlgebra& c, const ExistentialDnf& phi,
                                              const CentralElement& ce);

struct CorrespondenceEntry {
  std::vector<Element> e;
  Congruence theta;
  Congruence theta_c;
  std::optional<Congruence> defined;  // θ_{Φ,e⃗}, if a congruence
  bool matches = false;
  /// The central tuple of the mirrored pair (θ*, θ).
  std::vector<Element> complement;
};

/// Idempotent cross-check for rings: central elements are exactly the
/// central idempotents, and 1 − e is the mirror of e.
struct RingOracleReport {
  std::vector<Element> central_idempotents;
  bool sets_agree = false;
  bool complements_agree = false;
};

struct CorrespondenceReport {
  std::string algebra;
  std::vector<CorrespondenceEntry> entries;
  std::size_t factor_pairs = 0;
  bool tuples_distinct = false;
  bool thetas_distinct = false;
  bool all_match = false;
  std::optional<RingOracleReport> ring_oracle;
  bool passed() const;
};

/// Checks that e⃗ ↦ θ_{Φ,e⃗} is a bijection from central tuples onto the
/// θ-sides of the ordered factor pairs of C.
CorrespondenceReport correspondence_check(const FiniteAlgebra& c, const ExistentialDnf& phi,
                                          const VarietyContext& ctx,
                                          std::size_t max_size = kDefaultCongruenceBound);

/// Runs the idempotent oracle when the signature looks like a ring (binary
/// + and * or ·, constants 0 and 1); nullopt otherwise.
std::optional<RingOracleReport> ring_idempotent_oracle(const FiniteAlgebra& c,
                                                       const std::vector<CentralElement>& central);

}  // namespace factorlab
