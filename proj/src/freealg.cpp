#include "factorlab/freealg.hpp"

#include "factorlab/error.hpp"
#include "tuples.hpp"

namespace factorlab {

namespace {

std::vector<std::string> default_variables(std::size_t rank) {
  if (rank == 1) return {"x"};
  if (rank == 2) return {"x", "y"};
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= rank; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

}  // namespace

FreeAlgebra::FreeAlgebra(FiniteAlgebra base, std::vector<std::string> variables)
    : base_(std::move(base)),
      variables_(std::move(variables)),
      points_(detail::ipow(base_.size(), variables_.size())) {}

std::string FreeAlgebra::key_of(std::span<const Element> vec) {
  // Universes are capped at 256 elements, so one byte per point suffices.
  std::string key(vec.size(), '\0');
  for (std::size_t i = 0; i < vec.size(); ++i) key[i] = static_cast<char>(vec[i]);
  return key;
}

std::optional<Element> FreeAlgebra::find(std::span<const Element> vec) const {
  auto it = index_.find(key_of(vec));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Element> FreeAlgebra::insert(std::vector<Element> vec, Term witness,
                                           std::size_t depth) {
  const auto id = static_cast<Element>(witnesses_.size());
  auto [it, inserted] = index_.try_emplace(key_of(vec), id);
  if (!inserted) return std::nullopt;
  carrier_.insert(carrier_.end(), vec.begin(), vec.end());
  witnesses_.push_back(std::move(witness));
  depth_.push_back(depth);
  return id;
}

Element FreeAlgebra::apply(std::size_t op, std::span<const Element> args) const {
  const std::size_t k = args.size();
  std::vector<Element> out(points_), point(k);
  for (std::size_t p = 0; p < points_; ++p) {
    for (std::size_t j = 0; j < k; ++j) point[j] = vector(args[j])[p];
    out[p] = base_.apply(op, point);
  }
  auto found = find(out);
  if (!found) throw std::logic_error("free algebra carrier is not closed");
  return *found;
}

Element FreeAlgebra::eval_closed(const Term& t) const {
  if (t.is_variable()) {
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (variables_[i] == t.name) return generators_[i];
    throw ValidationError("unbound variable '" + t.name + "'");
  }
  auto op = base_.signature().find(t.name);
  if (!op || base_.signature()[*op].arity != t.args.size())
    throw ValidationError("bad symbol application '" + t.name + "'");
  std::vector<Element> args;
  for (const auto& a : t.args) args.push_back(eval_closed(a));
  return apply(*op, args);
}

FiniteAlgebra FreeAlgebra::as_algebra(std::size_t table_budget) const {
  const auto& sig = base_.signature();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    const std::size_t entries = detail::ipow(size(), k);
    if (k > 0 && entries / detail::ipow(size(), k - 1) != size())
      throw ResourceError("free algebra table size overflows");
    if (entries > table_budget)
      throw ResourceError("operation table for '" + sig[op].name + "' on a carrier of " +
                          std::to_string(size()) + " elements needs " +
                          std::to_string(entries) + " entries (budget " +
                          std::to_string(table_budget) + ")");
    std::vector<Element> table(entries);
    detail::for_each_tuple(size(), k, [&](std::span<const Element> args, std::size_t idx) {
      table[idx] = apply(op, args);
    });
    tables.push_back(std::move(table));
  }
  std::string name = "F[" + base_.name() + "](";
  for (std::size_t i = 0; i < variables_.size(); ++i) name += (i ? "," : "") + variables_[i];
  name += ")";
  return FiniteAlgebra(std::move(name), sig, size(), std::move(tables));
}

FreeAlgebra free_algebra(const FiniteAlgebra& a, std::size_t rank, std::size_t budget) {
  if (a.size() > 256) throw ResourceError("free algebras need a generator of at most 256 elements");
  FreeAlgebra f(a, default_variables(rank));
  const auto& sig = a.signature();
  const std::size_t n = a.size();
  const std::size_t m = f.points_;

  auto over_budget = [&] {
    return ResourceError("free algebra closure over " + a.name() + " of rank " +
                         std::to_string(rank) + " exceeded the budget of " +
                         std::to_string(budget) + " elements (partial closure size " +
                         std::to_string(f.size()) + "); use a smaller generator or raise --budget");
  };

  // Depth 0: the projections, then the constants.
  for (std::size_t i = 0; i < rank; ++i) {
    std::vector<Element> proj(m);
    const std::size_t stride = detail::ipow(n, rank - 1 - i);
    for (std::size_t p = 0; p < m; ++p) proj[p] = static_cast<Element>((p / stride) % n);
    auto id = f.insert(proj, Term::variable(f.variables_[i]), 0);
    f.generators_.push_back(id ? *id : *f.find(proj));
  }
  for (std::size_t op = 0; op < sig.size(); ++op) {
    if (sig[op].arity != 0) continue;
    f.insert(std::vector<Element>(m, a.constant(op)), Term::apply(sig[op].name), 0);
  }
  if (f.size() == 0) throw ValidationError("rank 0 free algebra over a signature without constants is empty");
  if (f.size() > budget) throw over_budget();

  std::size_t level_start = 0;
  for (std::size_t depth = 1;; ++depth) {
    const std::size_t known = f.size();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t k = sig[op].arity;
      if (k == 0) continue;
      std::vector<Element> point(k), out(m);
      detail::for_each_tuple(known, k, [&](std::span<const Element> args, std::size_t) {
        bool uses_last_level = false;
        for (Element e : args) uses_last_level = uses_last_level || e >= level_start;
        if (!uses_last_level) return;
        for (std::size_t p = 0; p < m; ++p) {
          for (std::size_t j = 0; j < k; ++j) point[j] = f.carrier_[args[j] * m + p];
          out[p] = a.apply(op, point);
        }
        if (f.index_.count(FreeAlgebra::key_of(out))) return;
        std::vector<Term> sub;
        sub.reserve(k);
        for (Element e : args) sub.push_back(f.witnesses_[e]);
        f.insert(out, Term::apply(sig[op].name, std::move(sub)), depth);
        if (f.size() > budget) throw over_budget();
      });
    }
    if (f.size() == known) break;
    level_start = known;
  }
  return f;
}

FreePairContext free_pair_context(const VarietyContext& ctx, std::size_t budget) {
  FreeAlgebra f1 = free_algebra(ctx.generator(), 1, budget);
  FreeAlgebra f2 = free_algebra(ctx.generator(), 2, budget);
  const std::size_t p_size = f1.size() * f2.size();
  constexpr std::size_t kTableBudget = std::size_t{1} << 24;
  for (const auto& sym : ctx.signature().symbols()) {
    std::size_t entries = 1;
    for (std::size_t j = 0; j < sym.arity; ++j) {
      entries *= p_size;
      if (entries > kTableBudget)
        throw ResourceError("F(x) x F(x,y) has " + std::to_string(p_size) +
                            " elements; its table for '" + sym.name +
                            "' exceeds the materialization budget");
    }
  }
  FiniteAlgebra product = direct_product(f1.as_algebra(), f2.as_algebra());
  const ProductEncoding enc{f2.size()};
  const Element x = enc.encode(f1.generators()[0], f2.generators()[0]);
  const Element y = enc.encode(f1.generators()[0], f2.generators()[1]);
  std::vector<Element> z;
  for (std::size_t i = 0; i < ctx.tuple_length(); ++i)
    z.push_back(enc.encode(f1.eval_closed(ctx.zero_terms()[i]),
                           f2.eval_closed(ctx.one_terms()[i])));
  return {std::move(f1), std::move(f2), std::move(product), x, y, std::move(z)};
}

}  // namespace factorlab
