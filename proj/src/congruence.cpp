#include "factorlab/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "factorlab/error.hpp"
#include "tuples.hpp"

namespace factorlab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Element{0});
  }

  Element find(Element x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when a and b were already in one class.
  bool unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

  Congruence to_congruence() {
    std::vector<std::size_t> labels(parent_.size());
    for (Element i = 0; i < parent_.size(); ++i) labels[i] = find(i);
    return Congruence::from_labels(labels);
  }

 private:
  std::vector<Element> parent_;
};

void require_same_universe(const Congruence& a, const Congruence& b) {
  if (a.universe_size() != b.universe_size())
    throw ValidationError("congruences belong to universes of different size");
}

}  // namespace

Congruence Congruence::from_labels(std::span<const std::size_t> labels) {
  std::map<std::size_t, Element> first;
  std::vector<Element> rep(labels.size());
  for (Element i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = first.try_emplace(labels[i], i);
    rep[i] = it->second;
  }
  return Congruence(std::move(rep));
}

Congruence Congruence::from_reps(std::vector<Element> rep) {
  for (Element i = 0; i < rep.size(); ++i)
    if (rep[i] > i || rep[rep[i]] != rep[i])
      throw ValidationError("representative array is not canonical at index " +
                            std::to_string(i));
  return Congruence(std::move(rep));
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Element> rep(n);
  std::iota(rep.begin(), rep.end(), Element{0});
  return Congruence(std::move(rep));
}

Congruence Congruence::total(std::size_t n) { return Congruence(std::vector<Element>(n, 0)); }

std::size_t Congruence::class_count() const {
  std::size_t c = 0;
  for (Element i = 0; i < rep_.size(); ++i) c += rep_[i] == i;
  return c;
}

std::vector<std::vector<Element>> Congruence::classes() const {
  std::vector<std::vector<Element>> out;
  std::vector<std::size_t> slot(rep_.size());
  for (Element i = 0; i < rep_.size(); ++i) {
    if (rep_[i] == i) {
      slot[i] = out.size();
      out.emplace_back();
    }
    out[slot[rep_[i]]].push_back(i);
  }
  return out;
}

bool Congruence::is_identity() const { return class_count() == rep_.size(); }

bool Congruence::is_total() const {
  return std::all_of(rep_.begin(), rep_.end(), [](Element r) { return r == 0; });
}

bool Congruence::subset_of(const Congruence& other) const {
  require_same_universe(*this, other);
  for (Element i = 0; i < rep_.size(); ++i)
    if (!other.related(i, rep_[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Congruence& a, const Congruence& b) {
  if (auto c = a.class_count() <=> b.class_count(); c != 0) return c;
  return a.rep_ <=> b.rep_;
}

std::string to_string(const Congruence& c) {
  std::string out = "{";
  bool first_class = true;
  for (const auto& cls : c.classes()) {
    if (!first_class) out += '|';
    first_class = false;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(cls[i]);
    }
  }
  out += '}';
  return out;
}

Congruence parse_partition(std::string_view text, std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  std::vector<char> seen(n, 0);
  std::size_t label = n;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '{' || text[pos] == '}'))
      ++pos;
  };
  bool class_has_member = false;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    if (text[pos] == '|') {
      ++pos;
      ++label;
      class_has_member = false;
      continue;
    }
    if (text[pos] == ',') {
      if (!class_has_member) throw ParseError("misplaced ','", pos);
      ++pos;
      continue;
    }
    if (text[pos] < '0' || text[pos] > '9') throw ParseError("expected element index", pos);
    std::size_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
      v = v * 10 + static_cast<std::size_t>(text[pos++] - '0');
    if (v >= n) throw ValidationError("element " + std::to_string(v) + " is outside the universe");
    if (seen[v]) throw ValidationError("element " + std::to_string(v) + " listed twice");
    seen[v] = 1;
    labels[v] = label;
    class_has_member = true;
  }
  return Congruence::from_labels(labels);
}

Relation Relation::of(const Congruence& c) {
  Relation r(c.universe_size());
  for (Element a = 0; a < c.universe_size(); ++a)
    for (Element b = 0; b < c.universe_size(); ++b)
      if (c.related(a, b)) r.insert(a, b);
  return r;
}

bool Relation::is_total() const {
  return std::all_of(bits_.begin(), bits_.end(), [](unsigned char b) { return b != 0; });
}

std::size_t Relation::pair_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::optional<Congruence> Relation::as_equivalence() const {
  for (Element a = 0; a < n_; ++a) {
    if (!contains(a, a)) return std::nullopt;
    for (Element b = 0; b < n_; ++b) {
      if (!contains(a, b)) continue;
      if (!contains(b, a)) return std::nullopt;
      for (Element c = 0; c < n_; ++c)
        if (contains(b, c) && !contains(a, c)) return std::nullopt;
    }
  }
  std::vector<std::size_t> labels(n_);
  for (Element a = 0; a < n_; ++a) {
    Element least = a;
    for (Element b = 0; b < a; ++b)
      if (contains(a, b)) {
        least = b;
        break;
      }
    labels[a] = least;
  }
  return Congruence::from_labels(labels);
}

bool is_compatible(const FiniteAlgebra& a, const Congruence& c) {
  if (c.universe_size() != a.size()) return false;
  // f(u) must be related to f(rep(u)) for every tuple u: any two
  // componentwise-related tuples share the same representative tuple.
  const auto& sig = a.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    if (k == 0) continue;
    std::vector<Element> reps(k);
    bool ok = true;
    detail::for_each_tuple(a.size(), k, [&](std::span<const Element> args, std::size_t idx) {
      if (!ok) return;
      for (std::size_t j = 0; j < k; ++j) reps[j] = c.rep(args[j]);
      ok = c.related(a.table(op)[idx], a.apply(op, reps));
    });
    if (!ok) return false;
  }
  return true;
}

Congruence principal_congruence(const FiniteAlgebra& alg, Element a, Element b) {
  const std::size_t n = alg.size();
  if (a >= n || b >= n) throw ValidationError("principal congruence seed outside the universe");
  UnionFind uf(n);
  std::vector<std::pair<Element, Element>> work;
  if (uf.unite(a, b)) work.emplace_back(a, b);

  // Every merged pair is pushed through every basic translation
  // t(v) = f(c1..v..ck). Closing the generating pairs suffices because
  // translations respect the chains that transitivity adds.
  const auto& sig = alg.signature();
  std::vector<Element> left, right;
  while (!work.empty()) {
    auto [u, v] = work.back();
    work.pop_back();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t k = sig[op].arity;
      if (k == 0) continue;
      left.resize(k);
      right.resize(k);
      for (std::size_t j = 0; j < k; ++j) {
        detail::for_each_tuple(n, k - 1, [&](std::span<const Element> rest, std::size_t) {
          for (std::size_t i = 0, r = 0; i < k; ++i) {
            if (i == j) {
              left[i] = u;
              right[i] = v;
            } else {
              left[i] = right[i] = rest[r++];
            }
          }
          const Element fu = alg.apply(op, left);
          const Element fv = alg.apply(op, right);
          if (uf.unite(fu, fv)) work.emplace_back(fu, fv);
        });
      }
    }
  }
  return uf.to_congruence();
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& a, std::size_t max_size) {
  if (a.size() > max_size)
    throw ResourceError(a.name() + " has size " + std::to_string(a.size()) +
                        ", above the congruence enumeration bound " +
                        std::to_string(max_size));
  std::set<Congruence> found{Congruence::identity(a.size())};
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = x + 1; y < a.size(); ++y) found.insert(principal_congruence(a, x, y));

  std::vector<Congruence> list(found.begin(), found.end());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Congruence joined = join(list[i], list[j]);
      if (found.insert(joined).second) list.push_back(std::move(joined));
    }
  }
  return {found.begin(), found.end()};
}

Congruence meet(const Congruence& a, const Congruence& b) {
  require_same_universe(a, b);
  const std::size_t n = a.universe_size();
  std::vector<std::size_t> labels(n);
  for (Element i = 0; i < n; ++i) labels[i] = a.rep(i) * n + b.rep(i);
  return Congruence::from_labels(labels);
}

Congruence join(const Congruence& a, const Congruence& b) {
  require_same_universe(a, b);
  UnionFind uf(a.universe_size());
  for (Element i = 0; i < a.universe_size(); ++i) {
    uf.unite(i, a.rep(i));
    uf.unite(i, b.rep(i));
  }
  return uf.to_congruence();
}

Relation compose(const Congruence& a, const Congruence& b) {
  require_same_universe(a, b);
  const std::size_t n = a.universe_size();
  Relation r(n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (!a.related(x, y)) continue;
      for (Element z = 0; z < n; ++z)
        if (b.related(y, z)) r.insert(x, z);
    }
  return r;
}

std::vector<FactorPair> factor_pairs(const FiniteAlgebra& a, std::size_t max_size) {
  const auto cons = all_congruences(a, max_size);
  std::vector<FactorPair> pairs;
  for (const auto& t : cons)
    for (const auto& tc : cons)
      if (meet(t, tc).is_identity() && compose(t, tc).is_total()) pairs.push_back({t, tc});
  return pairs;
}

Decomposition decomposition_from_pair(const FiniteAlgebra& a, const FactorPair& pair) {
  Quotient q1 = quotient(a, pair.theta);
  Quotient q2 = quotient(a, pair.theta_c);
  const ProductEncoding enc{q2.algebra.size()};
  ElementMap iso(a.size());
  std::vector<char> hit(q1.algebra.size() * q2.algebra.size(), 0);
  for (Element c = 0; c < a.size(); ++c) {
    iso[c] = enc.encode(q1.projection[c], q2.projection[c]);
    hit[iso[c]] = 1;
  }
  const bool bijective = hit.size() == a.size() &&
                         std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  if (!bijective || !is_homomorphism(a, direct_product(q1.algebra, q2.algebra), iso))
    throw std::logic_error("decomposition of " + a.name() + " along " +
                           to_string(pair.theta) + " / " + to_string(pair.theta_c) +
                           " is not an isomorphism");
  return {std::move(q1.algebra), std::move(q2.algebra), std::move(iso)};
}

CompactnessReport compactness_report(const FiniteAlgebra& a, const Congruence& theta) {
  CompactnessReport report;
  if (theta.is_identity()) {
    report.generators_needed = 0;
    return report;
  }
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<Congruence> principal;
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = x + 1; y < a.size(); ++y)
      if (theta.related(x, y)) {
        pairs.emplace_back(x, y);
        principal.push_back(principal_congruence(a, x, y));
      }

  Congruence current = Congruence::identity(a.size());
  for (std::size_t i = 0; i < pairs.size() && !(current == theta); ++i) {
    if (current.related(pairs[i].first, pairs[i].second)) continue;
    current = join(current, principal[i]);
    report.greedy_generators.push_back(pairs[i]);
  }

  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (principal[i] == theta) {
      report.generators_needed = 1;
      report.generators = {pairs[i]};
      return report;
    }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (join(principal[i], principal[j]) == theta) {
        report.generators_needed = 2;
        report.generators = {pairs[i], pairs[j]};
        return report;
      }
  return report;
}

}  // namespace factorlab
