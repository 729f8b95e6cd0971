#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "factorlab/algebra.hpp"
#include "factorlab/congruence.hpp"
#include "factorlab/formula.hpp"
#include "factorlab/io.hpp"
#include "factorlab/variety.hpp"

namespace factorlab::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(FACTORLAB_FIXTURE_DIR) / name;
}

inline FiniteAlgebra load(const std::string& stem) {
  return load_algebra(fixture(stem + ".alg.json"));
}

inline VarietyContext context(const std::string& stem) {
  return load_context(fixture(stem + ".ctx.json"));
}

inline ExistentialDnf formula(const std::string& stem, const VarietyContext& ctx) {
  return load_formula(fixture("formulas/" + stem + ".phi"), ctx);
}

/// Z_n with +, *, 0, 1 built directly, without the fixture files.
inline FiniteAlgebra ring_mod(std::size_t n) {
  std::vector<Element> plus(n * n), times(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      plus[a * n + b] = static_cast<Element>((a + b) % n);
      times[a * n + b] = static_cast<Element>((a * b) % n);
    }
  Signature sig({{"+", 2}, {"*", 2}, {"0", 0}, {"1", 0}});
  return FiniteAlgebra("Z" + std::to_string(n), sig, n,
                       {plus, times, {0}, {static_cast<Element>(1 % n)}});
}

/// Tables filled uniformly at random.
inline FiniteAlgebra random_algebra(std::mt19937& rng, std::size_t n, const Signature& sig) {
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  std::vector<std::vector<Element>> tables;
  for (const auto& op : sig.symbols()) {
    std::size_t len = 1;
    for (std::size_t i = 0; i < op.arity; ++i) len *= n;
    std::vector<Element> t(len);
    for (auto& v : t) v = pick(rng);
    tables.push_back(std::move(t));
  }
  return FiniteAlgebra("random", sig, n, std::move(tables));
}

/// Every set partition of {0..n-1} as a restricted growth string.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> labels(n, 0);
  auto rec = [&](auto& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      out.push_back(labels);
      return;
    }
    for (std::size_t c = 0; c <= used && c < n; ++c) {
      labels[i] = c;
      self(self, i + 1, c == used ? used + 1 : used);
    }
  };
  if (n == 0) return {{}};
  rec(rec, 0, 0);
  return out;
}

/// Compatibility straight from the definition: related argument tuples
/// give related results.
inline bool compatible_by_definition(const FiniteAlgebra& a, const std::vector<std::size_t>& label) {
  const std::size_t n = a.size();
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const std::size_t k = a.signature()[op].arity;
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= n;
    std::vector<Element> u(k), v(k);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) {
        std::size_t x = i, y = j;
        bool related = true;
        for (std::size_t p = k; p > 0; --p) {
          u[p - 1] = static_cast<Element>(x % n);
          v[p - 1] = static_cast<Element>(y % n);
          x /= n;
          y /= n;
          related = related && label[u[p - 1]] == label[v[p - 1]];
        }
        if (related && label[a.apply(op, u)] != label[a.apply(op, v)]) return false;
      }
  }
  return true;
}

inline std::vector<Congruence> brute_force_congruences(const FiniteAlgebra& a) {
  std::vector<Congruence> out;
  for (const auto& labels : set_partitions(a.size()))
    if (compatible_by_definition(a, labels)) out.push_back(Congruence::from_labels(labels));
  std::sort(out.begin(), out.end());
  return out;
}

/// Tree-walking evaluation of an existential DNF by enumerating w⃗; shares
/// no code with CompiledFormula.
inline bool naive_holds(const FiniteAlgebra& a, const ExistentialDnf& phi, Element x, Element y,
                        const std::vector<Element>& z) {
  Environment env{{"x", x}, {"y", y}};
  for (std::size_t i = 0; i < z.size(); ++i) env["z" + std::to_string(i + 1)] = z[i];
  const std::size_t m = phi.bound_vars.size();
  std::vector<Element> w(m, 0);
  while (true) {
    for (std::size_t i = 0; i < m; ++i) env[phi.bound_vars[i]] = w[i];
    for (const auto& conj : phi.disjuncts) {
      bool all = true;
      for (const auto& lit : conj) {
        const bool eq = eval_term(a, lit.lhs, env) == eval_term(a, lit.rhs, env);
        if (eq != lit.positive) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    std::size_t i = m;
    while (i > 0 && ++w[i - 1] == a.size()) w[--i] = 0;
    if (i == 0) return false;
  }
}

}  // namespace factorlab::testing
