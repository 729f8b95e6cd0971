#include "factorlab/dfc.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "factorlab/error.hpp"

namespace factorlab {

std::vector<CentralElement> central_elements(const FiniteAlgebra& c, const VarietyContext& ctx,
                                             std::size_t max_size) {
  const auto zeros = ctx.zeros(c);
  const auto ones = ctx.ones(c);
  std::vector<CentralElement> out;
  for (auto& pair : factor_pairs(c, max_size)) {
    std::vector<Element> e;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      std::optional<Element> solution;
      for (Element v = 0; v < c.size(); ++v) {
        if (!pair.theta.related(v, zeros[i]) || !pair.theta_c.related(v, ones[i])) continue;
        if (solution)
          throw std::logic_error("factor pair " + to_string(pair.theta) + " / " +
                                 to_string(pair.theta_c) + " admits two central tuples");
        solution = v;
      }
      if (!solution)
        throw std::logic_error("factor pair " + to_string(pair.theta) + " / " +
                               to_string(pair.theta_c) + " admits no central tuple");
      e.push_back(*solution);
    }
    Decomposition dec = decomposition_from_pair(c, pair);
    out.push_back({std::move(e), std::move(pair), std::move(dec)});
  }
  return out;
}

namespace {

struct PairJob {
  std::size_t left;
  std::size_t right;
};

struct PairResult {
  bool tested = false;
  std::uint64_t evaluations = 0;
  std::optional<std::string> skip_reason;
  std::vector<Counterexample> counterexamples;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

PairResult scan_pair(const CompiledFormula& cf, const ExistentialDnf& phi,
                     const VarietyContext& ctx, const PoolMember& left, const PoolMember& right,
                     const DfcCaps& caps) {
  PairResult result;
  const FiniteAlgebra& a = left.algebra;
  const FiniteAlgebra& b = right.algebra;
  const std::uint64_t p_size = a.size() * b.size();

  std::uint64_t per_assignment = 0;
  for (const auto& d : phi.disjuncts) per_assignment += d.size();
  std::uint64_t cost = saturating_mul(p_size, p_size);
  for (std::size_t i = 0; i < phi.bound_vars.size(); ++i) cost = saturating_mul(cost, p_size);
  cost = saturating_mul(cost, std::max<std::uint64_t>(per_assignment, 1));
  if (cost > caps.evaluation_budget) {
    result.skip_reason = "worst case of " + std::to_string(cost) +
                         " literal evaluations exceeds the budget";
    return result;
  }

  const FiniteAlgebra p = direct_product(a, b);
  const ProductEncoding enc{b.size()};
  const auto za = ctx.zeros(a);
  const auto ob = ctx.ones(b);
  std::vector<Element> z(za.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = enc.encode(za[i], ob[i]);

  result.tested = true;
  result.evaluations = cost;
  for (Element av = 0; av < a.size(); ++av)
    for (Element bv = 0; bv < b.size(); ++bv)
      for (Element cv = 0; cv < a.size(); ++cv)
        for (Element dv = 0; dv < b.size(); ++dv) {
          const bool holds = cf.holds(p, enc.encode(av, bv), enc.encode(cv, dv), z);
          const bool equal = av == cv;
          if (holds != equal)
            result.counterexamples.push_back({a.name(), b.name(), av, bv, cv, dv,
                                              holds ? Direction::Forward : Direction::Backward});
        }
  return result;
}

}  // namespace

DfcReport verify_dfc(const ExistentialDnf& phi, const VarietyContext& ctx, const DfcCaps& caps) {
  DfcReport report;
  report.formula = to_string(phi);
  const CompiledFormula cf(phi, ctx.signature());
  const auto& pool = ctx.pool();

  std::vector<PairJob> jobs;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (pool[i].algebra.size() * pool[j].algebra.size() <= caps.product_cap)
        jobs.push_back({i, j});

  std::vector<PairResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < jobs.size(); idx = next++)
      results[idx] = scan_pair(cf, phi, ctx, pool[jobs[idx].left], pool[jobs[idx].right], caps);
  };
  unsigned threads = caps.threads ? caps.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool_threads;
    for (unsigned t = 1; t < threads; ++t) pool_threads.emplace_back(worker);
    worker();
  }

  for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
    auto& r = results[idx];
    if (r.skip_reason) {
      report.skipped.push_back({pool[jobs[idx].left].algebra.name(),
                                pool[jobs[idx].right].algebra.name(), *r.skip_reason});
      continue;
    }
    ++report.pairs_tested;
    report.evaluations += r.evaluations;
    for (auto& ce : r.counterexamples) report.counterexamples.push_back(std::move(ce));
  }
  return report;
}

DfcReport verify_dfc(const PositiveExistential& psi, const VarietyContext& ctx,
                     const DfcCaps& caps) {
  DfcReport report = verify_dfc(psi.as_dnf(), ctx, caps);
  report.formula = to_string(psi);
  return report;
}

CentralCongruenceReport congruence_of_central(const FiniteAlgebra& c, const ExistentialDnf& phi,
                                              const CentralElement& ce) {
  const CompiledFormula cf(phi, c.signature());
  Relation rel(c.size());
  for (Element a = 0; a < c.size(); ++a)
    for (Element b = 0; b < c.size(); ++b)
      if (cf.holds(c, a, b, ce.e)) rel.insert(a, b);
  std::optional<Congruence> cong = rel.as_equivalence();
  if (cong && !is_compatible(c, *cong)) cong.reset();
  const bool matches = cong && *cong == ce.pair.theta;
  return {std::move(rel), std::move(cong), ce.pair.theta, matches};
}

std::optional<RingOracleReport> ring_idempotent_oracle(const FiniteAlgebra& c,
                                                       const std::vector<CentralElement>& central) {
  const auto& sig = c.signature();
  auto plus = sig.find("+");
  auto times = sig.find("*");
  auto zero = sig.find("0");
  auto one = sig.find("1");
  if (!plus || !times || !zero || !one || sig[*plus].arity != 2 || sig[*times].arity != 2 ||
      sig[*zero].arity != 0 || sig[*one].arity != 0 || sig.tuple_length() != 1)
    return std::nullopt;

  RingOracleReport report;
  for (Element e = 0; e < c.size(); ++e) {
    if (c.apply(*times, e, e) != e) continue;
    bool is_central = true;
    for (Element x = 0; x < c.size() && is_central; ++x)
      is_central = c.apply(*times, e, x) == c.apply(*times, x, e);
    if (is_central) report.central_idempotents.push_back(e);
  }

  std::set<Element> from_pairs;
  for (const auto& ce : central) from_pairs.insert(ce.e[0]);
  report.sets_agree = std::set<Element>(report.central_idempotents.begin(),
                                        report.central_idempotents.end()) == from_pairs;

  const Element one_value = c.constant(*one);
  report.complements_agree = true;
  for (const auto& ce : central) {
    auto mirror = std::find_if(central.begin(), central.end(), [&](const CentralElement& o) {
      return o.pair.theta == ce.pair.theta_c && o.pair.theta_c == ce.pair.theta;
    });
    // 1 - e is the unique f with e + f = 1.
    bool ok = mirror != central.end() && c.apply(*plus, ce.e[0], mirror->e[0]) == one_value;
    report.complements_agree = report.complements_agree && ok;
  }
  return report;
}

bool CorrespondenceReport::passed() const {
  const bool ring_ok = !ring_oracle || (ring_oracle->sets_agree && ring_oracle->complements_agree);
  return tuples_distinct && thetas_distinct && all_match && entries.size() == factor_pairs &&
         ring_ok;
}

CorrespondenceReport correspondence_check(const FiniteAlgebra& c, const ExistentialDnf& phi,
                                          const VarietyContext& ctx, std::size_t max_size) {
  CorrespondenceReport report;
  report.algebra = c.name();
  const auto central = central_elements(c, ctx, max_size);
  report.factor_pairs = central.size();

  std::set<std::vector<Element>> tuples;
  std::set<Congruence> thetas;
  report.all_match = true;
  for (const auto& ce : central) {
    auto cc = congruence_of_central(c, phi, ce);
    CorrespondenceEntry entry{ce.e, ce.pair.theta, ce.pair.theta_c, cc.congruence, cc.matches, {}};
    for (const auto& o : central)
      if (o.pair.theta == ce.pair.theta_c && o.pair.theta_c == ce.pair.theta) entry.complement = o.e;
    report.all_match = report.all_match && cc.matches && !entry.complement.empty();
    tuples.insert(ce.e);
    if (cc.congruence) thetas.insert(*cc.congruence);
    report.entries.push_back(std::move(entry));
  }
  report.tuples_distinct = tuples.size() == central.size();
  report.thetas_distinct = thetas.size() == central.size();
  report.ring_oracle = ring_idempotent_oracle(c, central);
  return report;
}

}  // namespace factorlab
