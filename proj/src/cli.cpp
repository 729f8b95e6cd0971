#include "factorlab/cli.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "factorlab/congruence.hpp"
#include "factorlab/dfc.hpp"
#include "factorlab/error.hpp"
#include "factorlab/freealg.hpp"
#include "factorlab/io.hpp"
#include "factorlab/pipeline.hpp"
#include "factorlab/positivize.hpp"

namespace factorlab {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Exit code carried out of a command that ran to completion.
struct Outcome {
  int code = kExitOk;
};

struct Settings {
  std::string format = "text";
  std::optional<std::size_t> pool_depth;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> budget;

  std::string algebra_path;
  std::string ctx_path;
  std::string formula_path;

  bool lattice = false;
  bool factor_pairs = false;
  std::optional<std::string> compactness;
  std::size_t rank = 1;
  bool all_witnesses = false;
  std::optional<std::string> central_algebra;

  bool machine() const { return format == "machine"; }
};

constexpr std::size_t kMaxListed = 20;

std::size_t closure_budget(const Settings& s) {
  if (s.budget) return *s.budget;
  if (const char* env = std::getenv("FACTORLAB_BUDGET")) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0' || v == 0)
      throw UsageError(std::string("FACTORLAB_BUDGET must be a positive integer, got '") + env + "'");
    return static_cast<std::size_t>(v);
  }
  return kDefaultClosureBudget;
}

std::size_t congruence_bound(const Settings& s) {
  return s.max_size.value_or(kDefaultCongruenceBound);
}

VarietyContext context_of(const Settings& s) {
  return load_context(s.ctx_path, PoolOverride{s.pool_depth, s.max_size});
}

std::string tuple_text(const std::vector<Element>& e) {
  if (e.size() == 1) return std::to_string(e[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  return out + ")";
}

std::string ops_list(const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ",";
    out += sig[i].name;
  }
  return out;
}

Json ops_json(const Signature& sig) {
  Json ops = Json::array();
  for (std::size_t i = 0; i < sig.size(); ++i)
    ops.push_back({{"name", sig[i].name}, {"arity", sig[i].arity}});
  return ops;
}

Json pool_json(const VarietyContext& ctx) {
  Json pool = Json::array();
  for (const auto& m : ctx.pool())
    pool.push_back({{"name", m.algebra.name()}, {"size", m.algebra.size()}});
  return pool;
}

// ---- algebra show ----------------------------------------------------------

Outcome cmd_algebra_show(const Settings& s, std::ostream& out) {
  const FiniteAlgebra a = load_algebra(s.algebra_path);
  const auto& sig = a.signature();
  if (s.machine()) {
    out << Json{{"status", "ok"}, {"name", a.name()}, {"size", a.size()},
                {"ops", ops_json(sig)}}.dump(2)
        << '\n';
    return {};
  }
  out << a.name() << ": size " << a.size() << ", ops " << ops_list(sig) << '\n';
  constexpr std::size_t kRows = 8;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const auto table = a.table(op);
    out << "  " << sig[op].name << " (arity " << sig[op].arity << ")";
    if (sig[op].arity == 0) {
      out << " = " << table[0] << '\n';
      continue;
    }
    out << '\n';
    const std::size_t rows = table.size() / a.size();
    for (std::size_t r = 0; r < rows && r < kRows; ++r) {
      out << "    ";
      for (std::size_t c = 0; c < a.size(); ++c) out << (c ? " " : "") << table[r * a.size() + c];
      out << '\n';
    }
    if (rows > kRows) out << "    ... " << rows - kRows << " more rows\n";
  }
  return {};
}

// ---- cong ------------------------------------------------------------------

Outcome cmd_cong(const Settings& s, std::ostream& out) {
  const FiniteAlgebra a = load_algebra(s.algebra_path);
  const std::size_t bound = congruence_bound(s);

  if (s.compactness) {
    const Congruence theta = parse_partition(*s.compactness, a.size());
    if (!is_compatible(a, theta))
      throw ValidationError(to_string(theta) + " is not a congruence of " + a.name());
    if (a.size() > bound)
      throw ResourceError(a.name() + " has " + std::to_string(a.size()) +
                          " elements, over the size bound " + std::to_string(bound));
    const CompactnessReport r = compactness_report(a, theta);
    auto pairs_json = [](const std::vector<std::pair<Element, Element>>& ps) {
      Json j = Json::array();
      for (auto [x, y] : ps) j.push_back({x, y});
      return j;
    };
    auto pairs_text = [](const std::vector<std::pair<Element, Element>>& ps) {
      std::string t;
      for (std::size_t i = 0; i < ps.size(); ++i)
        t += (i ? ", " : "") + std::string("Cg(") + std::to_string(ps[i].first) + "," +
             std::to_string(ps[i].second) + ")";
      return ps.empty() ? std::string("none") : t;
    };
    if (s.machine()) {
      Json j{{"status", "ok"}, {"algebra", a.name()}, {"congruence", to_string(theta)}};
      j["generators_needed"] = r.generators_needed ? Json(*r.generators_needed) : Json(nullptr);
      j["generators"] = pairs_json(r.generators);
      j["greedy_generators"] = pairs_json(r.greedy_generators);
      out << j.dump(2) << '\n';
      return {};
    }
    out << a.name() << ": " << to_string(theta) << '\n';
    if (r.generators_needed)
      out << "  join of " << *r.generators_needed << " principal congruences: "
          << pairs_text(r.generators) << '\n';
    else
      out << "  not a join of at most 2 principal congruences\n";
    out << "  greedy generators: " << pairs_text(r.greedy_generators) << '\n';
    return {};
  }

  if (s.factor_pairs) {
    const auto pairs = factor_pairs(a, bound);
    if (s.machine()) {
      Json list = Json::array();
      for (const auto& p : pairs)
        list.push_back({{"theta", to_string(p.theta)}, {"theta_c", to_string(p.theta_c)}});
      out << Json{{"status", "ok"}, {"algebra", a.name()}, {"count", pairs.size()},
                  {"factor_pairs", list}}.dump(2)
          << '\n';
      return {};
    }
    out << a.name() << ": " << pairs.size() << " factor pairs\n";
    for (const auto& p : pairs)
      out << "  " << to_string(p.theta) << "  x  " << to_string(p.theta_c) << '\n';
    return {};
  }

  const auto congs = all_congruences(a, bound);
  if (s.machine()) {
    Json list = Json::array();
    for (const auto& c : congs) list.push_back(to_string(c));
    out << Json{{"status", "ok"}, {"algebra", a.name()}, {"count", congs.size()},
                {"congruences", list}}.dump(2)
        << '\n';
    return {};
  }
  out << a.name() << ": " << congs.size() << " congruences\n";
  for (const auto& c : congs) out << "  " << to_string(c) << '\n';
  return {};
}

// ---- freealg dump ----------------------------------------------------------

Outcome cmd_freealg_dump(const Settings& s, std::ostream& out) {
  const VarietyContext ctx = context_of(s);
  const FreeAlgebra f = free_algebra(ctx.generator(), s.rank, closure_budget(s));
  std::string vars;
  for (std::size_t i = 0; i < f.variables().size(); ++i)
    vars += (i ? "," : "") + f.variables()[i];
  const std::string title = "F(" + vars + ")";
  if (s.machine()) {
    Json elems = Json::array();
    for (Element i = 0; i < f.size(); ++i) {
      const auto v = f.vector(i);
      elems.push_back({{"term", to_string(f.witness(i))},
                       {"depth", f.witness_depth(i)},
                       {"values", std::vector<Element>(v.begin(), v.end())}});
    }
    out << Json{{"status", "ok"}, {"generator", ctx.generator().name()}, {"free_algebra", title},
                {"size", f.size()}, {"elements", elems}}.dump(2)
        << '\n';
    return {};
  }
  out << title << " in V(" << ctx.generator().name() << "): " << f.size() << " elements\n";
  for (Element i = 0; i < f.size(); ++i) {
    out << "  [" << i << "] " << to_string(f.witness(i)) << "  :";
    for (Element v : f.vector(i)) out << ' ' << v;
    out << '\n';
  }
  return {};
}

// ---- positivize ------------------------------------------------------------

Json witnesses_json(const std::vector<std::string>& names, const std::vector<WitnessTerms>& ws) {
  Json j = Json::array();
  for (std::size_t i = 0; i < ws.size(); ++i)
    j.push_back({{"variable", names[i]}, {"u", to_string(ws[i].u)}, {"v", to_string(ws[i].v)}});
  return j;
}

Json positivize_json(const ExistentialDnf& phi, const PositivizeResult& r) {
  Json lambda = Json::array();
  for (std::size_t j : r.lambda_k) lambda.push_back(j + 1);
  Json cert = Json::array();
  for (const auto& c : r.certificate)
    cert.push_back({{"literal", c.index + 1}, {"positive", c.positive}, {"holds", c.holds}});
  Json j{{"disjunct", r.k + 1},
         {"lambda", lambda},
         {"phi_prime", to_string(r.phi_prime)},
         {"warning", r.phi_prime.warning ? Json(*r.phi_prime.warning) : Json(nullptr)},
         {"free_sizes", {r.f1_size, r.f2_size}},
         {"witnesses", witnesses_json(phi.bound_vars, r.witnesses)},
         {"certificate", cert},
         {"substitution",
          {{"passed", r.substitution.passed()},
           {"algebras", r.substitution.algebras_checked},
           {"assignments", r.substitution.assignments_checked},
           {"failures", r.substitution.failures}}}};
  if (!r.alternatives.empty()) {
    Json alts = Json::array();
    for (const auto& a : r.alternatives)
      alts.push_back({{"disjunct", a.disjunct + 1},
                      {"witnesses", witnesses_json(phi.bound_vars, a.witnesses)}});
    j["alternatives"] = alts;
  }
  return j;
}

void positivize_text(const ExistentialDnf& phi, const PositivizeResult& r, std::ostream& out) {
  out << "disjunct " << r.k + 1 << " of " << phi.disjuncts.size() << " has a witness in F(x) x F(x,y) ("
      << r.f1_size << " x " << r.f2_size << ")\n";
  out << "phi': " << to_string(r.phi_prime) << '\n';
  if (r.phi_prime.warning) out << "warning: " << *r.phi_prime.warning << '\n';
  for (std::size_t i = 0; i < r.witnesses.size(); ++i)
    out << "  " << phi.bound_vars[i] << ": u(x) = " << to_string(r.witnesses[i].u)
        << ", v(x,y) = " << to_string(r.witnesses[i].v) << '\n';
  for (const auto& c : r.certificate)
    out << "  literal " << c.index + 1 << " (" << (c.positive ? "positive" : "negative") << "): "
        << to_string(phi.disjuncts[r.k][c.index]) << (c.holds ? "  holds" : "  FAILS") << '\n';
  out << "substitution check: " << (r.substitution.passed() ? "pass" : "fail") << " on "
      << r.substitution.algebras_checked << " algebras, " << r.substitution.assignments_checked
      << " assignments\n";
  for (const auto& f : r.substitution.failures) out << "  " << f << '\n';
  for (const auto& a : r.alternatives) {
    out << "  alternative: disjunct " << a.disjunct + 1;
    for (std::size_t i = 0; i < a.witnesses.size(); ++i)
      out << (i ? "; " : ": ") << phi.bound_vars[i] << " = <" << to_string(a.witnesses[i].u)
          << ", " << to_string(a.witnesses[i].v) << ">";
    out << '\n';
  }
}

Outcome cmd_positivize(const Settings& s, std::ostream& out) {
  const VarietyContext ctx = context_of(s);
  const ExistentialDnf phi = load_formula(s.formula_path, ctx);
  PositivizeOptions opts;
  opts.budget = closure_budget(s);
  opts.all_witnesses = s.all_witnesses;
  const PositivizeResult r = positivize(phi, ctx, opts);
  const int code = r.substitution.passed() ? kExitOk : kExitDfcFail;
  if (s.machine()) {
    Json j{{"status", code == kExitOk ? "ok" : "fail"}, {"formula", to_string(phi)}};
    j.update(positivize_json(phi, r));
    out << j.dump(2) << '\n';
  } else {
    out << "formula: " << to_string(phi) << '\n';
    positivize_text(phi, r, out);
  }
  return {code};
}

// ---- dfc verify --------------------------------------------------------------

std::string direction_text(Direction d) {
  return d == Direction::Forward ? "formula holds but a != c" : "a = c but formula fails";
}

Json counterexample_json(const Counterexample& c) {
  return {{"left", c.left},  {"right", c.right},
          {"a", c.a},        {"b", c.b},
          {"c", c.c},        {"d", c.d},
          {"direction", c.direction == Direction::Forward ? "forward" : "backward"}};
}

std::string counterexample_text(const Counterexample& c) {
  return c.left + " x " + c.right + ": <" + std::to_string(c.a) + "," + std::to_string(c.b) +
         "> vs <" + std::to_string(c.c) + "," + std::to_string(c.d) + ">, " +
         direction_text(c.direction);
}

Json dfc_json(const DfcReport& r) {
  Json skipped = Json::array();
  for (const auto& p : r.skipped)
    skipped.push_back({{"left", p.left}, {"right", p.right}, {"reason", p.reason}});
  Json ces = Json::array();
  for (std::size_t i = 0; i < r.counterexamples.size() && i < kMaxListed; ++i)
    ces.push_back(counterexample_json(r.counterexamples[i]));
  return {{"status", r.passed() ? "pass" : "fail"},
          {"formula", r.formula},
          {"pairs_tested", r.pairs_tested},
          {"evaluations", r.evaluations},
          {"skipped", skipped},
          {"counterexample_count", r.counterexamples.size()},
          {"first_counterexample",
           r.counterexamples.empty() ? Json(nullptr) : counterexample_json(r.counterexamples[0])},
          {"counterexamples", ces}};
}

void dfc_text(const DfcReport& r, std::ostream& out) {
  out << "formula: " << r.formula << '\n';
  out << "pairs tested: " << r.pairs_tested << ", literal evaluations <= " << r.evaluations
      << '\n';
  for (const auto& p : r.skipped) out << "  skipped " << p.left << " x " << p.right << ": " << p.reason << '\n';
  if (r.passed()) {
    out << "result: pass\n";
    return;
  }
  out << "result: fail, " << r.counterexamples.size() << " counterexamples\n";
  out << "first: " << counterexample_text(r.counterexamples[0]) << '\n';
  for (std::size_t i = 1; i < r.counterexamples.size() && i < kMaxListed; ++i)
    out << "  " << counterexample_text(r.counterexamples[i]) << '\n';
  if (r.counterexamples.size() > kMaxListed)
    out << "  ... " << r.counterexamples.size() - kMaxListed << " more\n";
}

Outcome cmd_dfc_verify(const Settings& s, std::ostream& out) {
  const VarietyContext ctx = context_of(s);
  const ExistentialDnf phi = load_formula(s.formula_path, ctx);
  const DfcReport r = verify_dfc(phi, ctx);
  if (s.machine()) {
    Json j = dfc_json(r);
    j["pool"] = pool_json(ctx);
    out << j.dump(2) << '\n';
  } else {
    dfc_text(r, out);
  }
  return {r.passed() ? kExitOk : kExitDfcFail};
}

// ---- central list ------------------------------------------------------------

std::vector<FiniteAlgebra> central_targets(const Settings& s, const VarietyContext& ctx,
                                           std::vector<std::string>& skipped) {
  std::vector<FiniteAlgebra> targets;
  if (s.central_algebra) {
    FiniteAlgebra a = load_algebra(*s.central_algebra);
    if (!(a.signature() == ctx.signature()))
      throw ValidationError(a.name() + " does not have the signature of the context");
    targets.push_back(std::move(a));
    return targets;
  }
  for (const auto& m : ctx.pool()) {
    if (m.algebra.size() > congruence_bound(s))
      skipped.push_back(m.algebra.name());
    else
      targets.push_back(m.algebra);
  }
  return targets;
}

Outcome cmd_central_list(const Settings& s, std::ostream& out) {
  const VarietyContext ctx = context_of(s);
  std::vector<std::string> skipped;
  const auto targets = central_targets(s, ctx, skipped);
  Json list = Json::array();
  for (const auto& a : targets) {
    const auto central = central_elements(a, ctx, congruence_bound(s));
    if (s.machine()) {
      Json entries = Json::array();
      for (const auto& ce : central)
        entries.push_back({{"e", ce.e},
                           {"theta", to_string(ce.pair.theta)},
                           {"theta_c", to_string(ce.pair.theta_c)}});
      list.push_back({{"algebra", a.name()}, {"size", a.size()}, {"central", entries}});
      continue;
    }
    out << a.name() << ": " << central.size() << " central elements\n";
    for (const auto& ce : central)
      out << "  e = " << tuple_text(ce.e) << "  theta = " << to_string(ce.pair.theta)
          << "  theta* = " << to_string(ce.pair.theta_c) << '\n';
  }
  if (s.machine())
    out << Json{{"status", "ok"}, {"algebras", list}, {"skipped", skipped}}.dump(2) << '\n';
  else
    for (const auto& name : skipped) out << "skipped " << name << " (over the size bound)\n";
  return {};
}

// ---- correspondence ----------------------------------------------------------

Json correspondence_json(const CorrespondenceReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"e", e.e},
                       {"theta", to_string(e.theta)},
                       {"defined", e.defined ? Json(to_string(*e.defined)) : Json(nullptr)},
                       {"matches", e.matches},
                       {"complement", e.complement}});
  Json j{{"algebra", r.algebra},
         {"passed", r.passed()},
         {"factor_pairs", r.factor_pairs},
         {"tuples_distinct", r.tuples_distinct},
         {"thetas_distinct", r.thetas_distinct},
         {"entries", entries}};
  if (r.ring_oracle)
    j["ring_oracle"] = {{"central_idempotents", r.ring_oracle->central_idempotents},
                        {"sets_agree", r.ring_oracle->sets_agree},
                        {"complements_agree", r.ring_oracle->complements_agree}};
  return j;
}

void correspondence_text(const CorrespondenceReport& r, std::ostream& out) {
  out << r.algebra << ": " << (r.passed() ? "pass" : "fail") << ", " << r.factor_pairs
      << " factor pairs\n";
  for (const auto& e : r.entries)
    out << "  e = " << tuple_text(e.e) << " -> "
        << (e.defined ? to_string(*e.defined) : std::string("not a congruence"))
        << (e.matches ? "" : "  expected " + to_string(e.theta)) << '\n';
  if (r.ring_oracle)
    out << "  central idempotents agree: " << (r.ring_oracle->sets_agree ? "yes" : "no")
        << ", 1 - e is the complement: " << (r.ring_oracle->complements_agree ? "yes" : "no")
        << '\n';
}

Outcome cmd_correspondence(const Settings& s, std::ostream& out) {
  const VarietyContext ctx = context_of(s);
  const ExistentialDnf phi = load_formula(s.formula_path, ctx);
  std::vector<std::string> skipped;
  const auto targets = central_targets(s, ctx, skipped);
  bool ok = true;
  Json list = Json::array();
  for (const auto& a : targets) {
    const auto r = correspondence_check(a, phi, ctx, congruence_bound(s));
    ok = ok && r.passed();
    if (s.machine())
      list.push_back(correspondence_json(r));
    else
      correspondence_text(r, out);
  }
  if (s.machine())
    out << Json{{"status", ok ? "pass" : "fail"}, {"formula", to_string(phi)},
                {"algebras", list}, {"skipped", skipped}}.dump(2)
        << '\n';
  else
    for (const auto& name : skipped) out << "skipped " << name << " (over the size bound)\n";
  return {ok ? kExitOk : kExitDfcFail};
}

// ---- pipeline ----------------------------------------------------------------

int pipeline_code(const PipelineReport& r) {
  if (r.passed()) return kExitOk;
  if (r.error_kind == "no-witness") return kExitNoWitness;
  if (r.error_kind == "resource") return kExitResource;
  return kExitDfcFail;
}

Outcome cmd_pipeline(const Settings& s, std::ostream& out) {
  const VarietyContext ctx = context_of(s);
  const ExistentialDnf phi = load_formula(s.formula_path, ctx);
  PipelineOptions opts;
  opts.positivize.budget = closure_budget(s);
  opts.congruence_bound = congruence_bound(s);
  const PipelineReport r = run_pipeline(phi, ctx, opts);
  const int code = pipeline_code(r);

  if (s.machine()) {
    Json stages = Json::array();
    for (const auto& st : r.stages)
      stages.push_back({{"name", st.name}, {"status", to_string(st.status)}, {"detail", st.detail}});
    Json j{{"status", r.passed() ? "pass" : "fail"},
           {"failed_stage", r.failed_stage() ? Json(*r.failed_stage()) : Json(nullptr)},
           {"formula", to_string(phi)},
           {"pool", pool_json(ctx)},
           {"stages", stages}};
    if (r.original) j["dfc"] = dfc_json(*r.original);
    if (r.positive) j["positivize"] = positivize_json(phi, *r.positive);
    if (r.positive_dfc) j["dfc_positive"] = dfc_json(*r.positive_dfc);
    if (!r.correspondence.empty() || !r.correspondence_skipped.empty()) {
      Json list = Json::array();
      for (const auto& c : r.correspondence) list.push_back(correspondence_json(c));
      j["correspondence"] = {{"algebras", list}, {"skipped", r.correspondence_skipped}};
    }
    out << j.dump(2) << '\n';
    return {code};
  }

  out << "formula: " << to_string(phi) << '\n';
  out << "pool: " << ctx.pool().size() << " algebras\n";
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    const auto& st = r.stages[i];
    out << "stage " << i + 1 << " " << st.name << ": " << to_string(st.status);
    if (!st.detail.empty()) out << " (" << st.detail << ")";
    out << '\n';
  }
  if (r.original && !r.original->passed())
    out << "first counterexample: " << counterexample_text(r.original->counterexamples[0]) << '\n';
  if (r.positive) positivize_text(phi, *r.positive, out);
  if (r.positive_dfc && !r.positive_dfc->passed())
    out << "first counterexample for phi': "
        << counterexample_text(r.positive_dfc->counterexamples[0]) << '\n';
  for (const auto& c : r.correspondence)
    if (!c.passed()) correspondence_text(c, out);
  out << "result: " << (r.passed() ? "pass" : "fail at " + *r.failed_stage()) << '\n';
  return {code};
}

void report_error(const Settings& s, std::ostream& out, std::ostream& err, const char* kind,
                  const std::string& message, const std::string& extra = {}) {
  if (s.machine()) {
    Json j{{"status", "error"}, {"kind", kind}, {"message", message}};
    if (!extra.empty()) j["assignment"] = extra;
    out << j.dump(2) << '\n';
    return;
  }
  err << "error: " << message << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Finite algebras, factor congruences and central elements", "factorlab"};
  app.require_subcommand(1);
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--pool-depth", s.pool_depth, "Rounds of pool generation");
  app.add_option("--max-size", s.max_size,
                 "Largest pool member, and size bound for congruence computations")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", s.budget, "Free-algebra closure budget (elements)")
      ->check(CLI::PositiveNumber);

  auto* algebra = app.add_subcommand("algebra", "Inspect an algebra file")->require_subcommand(1);
  auto* show = algebra->add_subcommand("show", "Print size, signature and table rows");
  show->add_option("algebra", s.algebra_path, "Algebra file")->required();

  auto* cong = app.add_subcommand("cong", "Congruences of an algebra");
  cong->add_option("algebra", s.algebra_path, "Algebra file")->required();
  auto* lattice = cong->add_flag("--lattice", s.lattice, "List all congruences (default)");
  auto* pairs = cong->add_flag("--factor-pairs", s.factor_pairs, "List ordered factor pairs");
  auto* compact = cong->add_option("--compactness", s.compactness,
                                   "Principal generators of a congruence, e.g. \"{0,3|1,4|2,5}\"");
  lattice->excludes(pairs)->excludes(compact);
  pairs->excludes(compact);

  auto* freealg = app.add_subcommand("freealg", "Free algebras of V(generator)")->require_subcommand(1);
  auto* dump = freealg->add_subcommand("dump", "Elements of F(x1..xn) with witness terms");
  dump->add_option("context", s.ctx_path, "Variety-context file")->required();
  dump->add_option("--rank", s.rank, "Number of free generators")->check(CLI::Range(1, 4));

  auto* pos = app.add_subcommand("positivize", "Replace an existential DFC formula by a positive one");
  pos->add_option("context", s.ctx_path, "Variety-context file")->required();
  pos->add_option("formula", s.formula_path, "Formula file")->required();
  pos->add_flag("--all-witnesses", s.all_witnesses, "Also list every satisfiable disjunct");

  auto* dfc = app.add_subcommand("dfc", "Definable-factor-congruence checks")->require_subcommand(1);
  auto* verify = dfc->add_subcommand("verify", "Check the biconditional on the pool");
  verify->add_option("context", s.ctx_path, "Variety-context file")->required();
  verify->add_option("formula", s.formula_path, "Formula file")->required();

  auto* central = app.add_subcommand("central", "Central elements")->require_subcommand(1);
  auto* list = central->add_subcommand("list", "Central tuples of each pool member");
  list->add_option("context", s.ctx_path, "Variety-context file")->required();
  list->add_option("--algebra", s.central_algebra, "Use this algebra instead of the pool");

  auto* corr = app.add_subcommand("correspondence", "Central tuples against factor congruences");
  corr->add_option("context", s.ctx_path, "Variety-context file")->required();
  corr->add_option("formula", s.formula_path, "Formula file")->required();
  corr->add_option("--algebra", s.central_algebra, "Use this algebra instead of the pool");

  auto* pipe = app.add_subcommand("pipeline", "verify, positivize, verify again, correspondence");
  pipe->add_option("context", s.ctx_path, "Variety-context file")->required();
  pipe->add_option("formula", s.formula_path, "Formula file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Outcome o;
    if (show->parsed()) o = cmd_algebra_show(s, out);
    else if (cong->parsed()) o = cmd_cong(s, out);
    else if (dump->parsed()) o = cmd_freealg_dump(s, out);
    else if (pos->parsed()) o = cmd_positivize(s, out);
    else if (verify->parsed()) o = cmd_dfc_verify(s, out);
    else if (list->parsed()) o = cmd_central_list(s, out);
    else if (corr->parsed()) o = cmd_correspondence(s, out);
    else if (pipe->parsed()) o = cmd_pipeline(s, out);
    return o.code;
  } catch (const NoWitnessError& e) {
    report_error(s, out, err, "no-witness", e.what(), e.assignment());
    return kExitNoWitness;
  } catch (const ValidationError& e) {
    report_error(s, out, err, "validation", e.what());
    return kExitValidation;
  } catch (const ResourceError& e) {
    report_error(s, out, err, "resource", e.what());
    return kExitResource;
  } catch (const IoError& e) {
    report_error(s, out, err, "io", e.what());
    return kExitUsage;
  } catch (const UsageError& e) {
    report_error(s, out, err, "usage", e.what());
    return kExitUsage;
  }
}

}  // namespace factorlab
