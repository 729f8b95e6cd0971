#include "factorlab/algebra.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "factorlab/congruence.hpp"
#include "factorlab/error.hpp"
#include "tuples.hpp"

namespace factorlab {

using detail::for_each_tuple;
using detail::ipow;

namespace {

// Groups of interchangeable spellings for the infix symbols.
constexpr std::array<std::array<std::string_view, 2>, 3> kAliases = {{
    {"*", "\xC2\xB7"},
    {"/\\", "\xE2\x88\xA7"},
    {"\\/", "\xE2\x88\xA8"},
}};

}  // namespace

Signature::Signature(std::vector<OpSymbol> symbols, std::size_t tuple_length)
    : symbols_(std::move(symbols)), tuple_length_(tuple_length) {
  if (tuple_length_ == 0) throw ValidationError("tuple length l must be positive");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw ValidationError("empty operation symbol name");
    if (!seen.insert(s.name).second)
      throw ValidationError("duplicate operation symbol '" + s.name + "'");
  }
}

bool Signature::has_constants() const {
  return std::any_of(symbols_.begin(), symbols_.end(),
                     [](const OpSymbol& s) { return s.arity == 0; });
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  for (const auto& group : kAliases) {
    if (std::find(group.begin(), group.end(), name) == group.end()) continue;
    for (auto alt : group) {
      if (alt == name) continue;
      for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == alt) return i;
    }
  }
  return std::nullopt;
}

FiniteAlgebra::FiniteAlgebra(std::string name, Signature signature, std::size_t size,
                             std::vector<std::vector<Element>> tables)
    : name_(std::move(name)),
      signature_(std::move(signature)),
      size_(size),
      tables_(std::move(tables)) {
  if (size_ == 0) throw ValidationError(name_ + ": universe must be nonempty");
  if (tables_.size() != signature_.size())
    throw ValidationError(name_ + ": expected " + std::to_string(signature_.size()) +
                          " operation tables, got " + std::to_string(tables_.size()));
  for (std::size_t op = 0; op < tables_.size(); ++op) {
    const auto& sym = signature_[op];
    const std::size_t expected = ipow(size_, sym.arity);
    if (tables_[op].size() != expected)
      throw ValidationError(name_ + ": table for '" + sym.name + "' has length " +
                            std::to_string(tables_[op].size()) + ", expected " +
                            std::to_string(expected));
    for (std::size_t i = 0; i < expected; ++i)
      if (tables_[op][i] >= size_)
        throw ValidationError(name_ + ": table for '" + sym.name + "' entry " +
                              std::to_string(i) + " = " +
                              std::to_string(tables_[op][i]) + " is out of range");
  }
}

Element FiniteAlgebra::apply(std::size_t op, std::span<const Element> args) const {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * size_ + a;
  return tables_[op][idx];
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& other) const {
  return size_ == other.size_ && signature_ == other.signature_ &&
         tables_ == other.tables_;
}

FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
  FiniteAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Element eval_term(const FiniteAlgebra& a, const Term& t, const Environment& env) {
  if (t.is_variable()) {
    auto it = env.find(t.name);
    if (it == env.end()) throw ValidationError("unbound variable '" + t.name + "'");
    if (it->second >= a.size())
      throw ValidationError("variable '" + t.name + "' bound outside the universe");
    return it->second;
  }
  auto op = a.signature().find(t.name);
  if (!op) throw ValidationError("unknown symbol '" + t.name + "'");
  const std::size_t arity = a.signature()[*op].arity;
  if (t.args.size() != arity)
    throw ValidationError("symbol '" + t.name + "' expects " + std::to_string(arity) +
                          " arguments, got " + std::to_string(t.args.size()));
  std::vector<Element> vals;
  vals.reserve(arity);
  for (const auto& arg : t.args) vals.push_back(eval_term(a, arg, env));
  return a.apply(*op, vals);
}

FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a.signature() == b.signature()))
    throw ValidationError("signature mismatch between " + a.name() + " and " + b.name());
  const std::size_t n = a.size() * b.size();
  const ProductEncoding enc{b.size()};
  std::vector<std::vector<Element>> tables;
  tables.reserve(a.signature().size());
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const std::size_t k = a.signature()[op].arity;
    std::vector<Element> table(ipow(n, k));
    std::vector<Element> left(k), right(k);
    for_each_tuple(n, k, [&](std::span<const Element> args, std::size_t idx) {
      for (std::size_t j = 0; j < k; ++j) {
        left[j] = enc.first(args[j]);
        right[j] = enc.second(args[j]);
      }
      table[idx] = enc.encode(a.apply(op, left), b.apply(op, right));
    });
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(a.name() + "x" + b.name(), a.signature(), n, std::move(tables));
}

Subalgebra subalgebra_generated(const FiniteAlgebra& a,
                                std::span<const Element> generators) {
  const auto& sig = a.signature();
  std::vector<char> member(a.size(), 0);
  std::vector<Element> elems;
  auto add = [&](Element e) {
    if (!member[e]) {
      member[e] = 1;
      elems.push_back(e);
    }
  };
  for (Element g : generators) {
    if (g >= a.size()) throw ValidationError("generator outside the universe");
    add(g);
  }
  for (std::size_t op = 0; op < sig.size(); ++op)
    if (sig[op].arity == 0) add(a.constant(op));
  if (elems.empty()) throw ValidationError(a.name() + ": empty subuniverse");

  // Semi-naive closure: every round only visits tuples that use an element
  // added in the previous round.
  std::size_t old_count = 0;
  while (old_count < elems.size()) {
    const std::size_t count = elems.size();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t k = sig[op].arity;
      if (k == 0) continue;
      std::vector<Element> args(k);
      for_each_tuple(count, k, [&](std::span<const Element> pos, std::size_t) {
        bool fresh = false;
        for (std::size_t j = 0; j < k; ++j) {
          args[j] = elems[pos[j]];
          fresh = fresh || pos[j] >= old_count;
        }
        if (fresh) add(a.apply(op, args));
      });
    }
    old_count = count;
  }

  std::sort(elems.begin(), elems.end());
  std::vector<Element> index_of(a.size(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) index_of[elems[i]] = static_cast<Element>(i);

  const std::size_t m = elems.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    std::vector<Element> table(ipow(m, k));
    std::vector<Element> args(k);
    for_each_tuple(m, k, [&](std::span<const Element> pos, std::size_t idx) {
      for (std::size_t j = 0; j < k; ++j) args[j] = elems[pos[j]];
      table[idx] = index_of[a.apply(op, args)];
    });
    tables.push_back(std::move(table));
  }

  std::string name = a.name();
  if (m != a.size()) {
    name += "<";
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (i) name += ",";
      name += std::to_string(generators[i]);
    }
    name += ">";
  }
  return {FiniteAlgebra(std::move(name), sig, m, std::move(tables)), std::move(elems)};
}

Quotient quotient(const FiniteAlgebra& a, const Congruence& theta) {
  if (theta.universe_size() != a.size())
    throw ValidationError("partition size does not match " + a.name());
  if (!is_compatible(a, theta))
    throw ValidationError("partition " + to_string(theta) + " is not a congruence of " +
                          a.name());
  const auto& sig = a.signature();
  ElementMap projection(a.size());
  std::vector<Element> reps;
  std::vector<Element> class_of_rep(a.size(), 0);
  for (Element i = 0; i < a.size(); ++i) {
    if (theta.rep(i) == i) {
      class_of_rep[i] = static_cast<Element>(reps.size());
      reps.push_back(i);
    }
    projection[i] = class_of_rep[theta.rep(i)];
  }
  const std::size_t m = reps.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    std::vector<Element> table(ipow(m, k));
    std::vector<Element> args(k);
    for_each_tuple(m, k, [&](std::span<const Element> pos, std::size_t idx) {
      for (std::size_t j = 0; j < k; ++j) args[j] = reps[pos[j]];
      table[idx] = projection[a.apply(op, args)];
    });
    tables.push_back(std::move(table));
  }
  std::string name = theta.is_identity() ? a.name() : a.name() + "/" + to_string(theta);
  return {FiniteAlgebra(std::move(name), sig, m, std::move(tables)), std::move(projection)};
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                     std::span<const Element> h) {
  if (!(a.signature() == b.signature())) return false;
  if (h.size() != a.size()) return false;
  for (Element v : h)
    if (v >= b.size()) return false;
  const auto& sig = a.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    std::vector<Element> image(k);
    bool ok = true;
    for_each_tuple(a.size(), k, [&](std::span<const Element> args, std::size_t idx) {
      if (!ok) return;
      for (std::size_t j = 0; j < k; ++j) image[j] = h[args[j]];
      ok = h[a.table(op)[idx]] == b.apply(op, image);
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace factorlab
