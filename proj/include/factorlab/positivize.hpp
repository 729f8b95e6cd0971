#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "factorlab/error.hpp"
#include "factorlab/formula.hpp"
#include "factorlab/freealg.hpp"
#include "factorlab/variety.hpp"

namespace factorlab {

/// No disjunct of Φ is satisfiable at ⟨x,x⟩, ⟨x,y⟩, [0⃗,1⃗] in F(x)×F(x,y),
/// which certifies that Φ does not satisfy the DFC biconditional over
/// V(generator).
class NoWitnessError : public Error {
 public:
  NoWitnessError(const std::string& message, std::string assignment)
      : Error(message), assignment_(std::move(assignment)) {}
  /// The distinguished assignment, rendered with witness terms.
  const std::string& assignment() const noexcept { return assignment_; }

 private:
  std::string assignment_;
};

struct DisjunctWitness {
  std::size_t disjunct;
  std::vector<Element> witness;  // elements of F(x)×F(x,y), one per bound variable
};

/// First disjunct (input order) with a witness at the distinguished
/// arguments; witnesses are searched lexicographically and must satisfy
/// every literal of the disjunct, negative ones included.
DisjunctWitness find_disjunct_witness(const ExistentialDnf& phi, const FreePairContext& fp);

/// Every (k, w⃗) pair, in the same order, stopping after `limit`.
std::vector<DisjunctWitness> all_disjunct_witnesses(const ExistentialDnf& phi,
                                                    const FreePairContext& fp,
                                                    std::size_t limit);

struct WitnessTerms {
  Term u;  // over {x}, from the F(x) coordinate
  Term v;  // over {x, y}, from the F(x,y) coordinate
};

struct LiteralCertificate {
  std::size_t index;
  bool positive;
  bool holds;
};

/// Substitution check of the two identities behind Φ′ on the pool:
/// Λ_k holds at (x, x, 0⃗, u⃗(x)) and at (x, y, 1⃗, v⃗(x,y)).
struct SubstitutionReport {
  std::size_t algebras_checked = 0;
  std::size_t assignments_checked = 0;
  std::vector<std::string> failures;
  bool passed() const noexcept { return failures.empty(); }
};

struct PositivizeOptions {
  std::size_t budget = kDefaultClosureBudget;
  bool all_witnesses = false;
  std::size_t witness_limit = 256;
};

struct Alternative {
  std::size_t disjunct;
  std::vector<WitnessTerms> witnesses;
};

struct PositivizeResult {
  std::size_t k;
  std::vector<std::size_t> lambda_k;
  PositiveExistential phi_prime;
  std::vector<WitnessTerms> witnesses;
  std::vector<LiteralCertificate> certificate;
  SubstitutionReport substitution;
  std::size_t f1_size;
  std::size_t f2_size;
  /// Populated only with PositivizeOptions::all_witnesses.
  std::vector<Alternative> alternatives;
};

/// Replaces Φ by the positive formula ∃w⃗ ⋀_{j∈Λ_k} φ_kj for the first
/// disjunct k admitting a witness in F(x)×F(x,y). Throws NoWitnessError,
/// or ResourceError when the free algebras exceed the budget.
PositivizeResult positivize(const ExistentialDnf& phi, const VarietyContext& ctx,
                            const PositivizeOptions& options = {});

SubstitutionReport check_substitution(const ExistentialDnf& phi, std::size_t k,
                                      const std::vector<WitnessTerms>& witnesses,
                                      const VarietyContext& ctx);

struct PreservationCaps {
  std::size_t product_cap = 64;
  std::size_t homomorphism_source_cap = 8;
  std::size_t maps_per_pair = 64;
};

struct PreservationViolation {
  std::string kind;  // "image" or "product"
  std::string description;
};

struct PreservationReport {
  std::size_t homomorphisms_checked = 0;
  std::size_t products_checked = 0;
  std::size_t assignments_checked = 0;
  std::vector<PreservationViolation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

/// Surjective homomorphisms A -> B by backtracking, at most `limit`.
std::vector<ElementMap> surjective_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                 std::size_t limit);

/// Executes preservation of ψ by homomorphic images (every quotient map of
/// a pool member, plus surjections found between pool members) and by
/// binary products of pool members. ψ is evaluated literally, so a
/// negative literal smuggled into it shows up as a violation.
PreservationReport check_preservation(const PositiveExistential& psi, const VarietyContext& ctx,
                                      const PreservationCaps& caps = {});

}  // namespace factorlab
