#include "factorlab/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "factorlab/error.hpp"

namespace factorlab {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Eq, Neq, Infix, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (ident_char(c)) {
      const std::size_t start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", i++});
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", i++});
    } else if (c == '=') {
      out.push_back({Tok::Eq, "=", i++});
    } else if (starts("!=")) {
      out.push_back({Tok::Neq, "!=", i});
      i += 2;
    } else if (starts("\xE2\x89\xA0")) {  // ≠
      out.push_back({Tok::Neq, "!=", i});
      i += 3;
    } else if (starts("\xE2\x88\x83")) {  // ∃
      out.push_back({Tok::Ident, "exists", i});
      i += 3;
    } else if (starts("\xE2\x88\x80")) {  // ∀
      out.push_back({Tok::Ident, "forall", i});
      i += 3;
    } else if (c == '+' || c == '*') {
      out.push_back({Tok::Infix, std::string(1, c), i++});
    } else if (starts("/\\") || starts("\\/")) {
      out.push_back({Tok::Infix, std::string(s.substr(i, 2)), i});
      i += 2;
    } else if (starts("\xC2\xB7")) {  // ·
      out.push_back({Tok::Infix, std::string(s.substr(i, 2)), i});
      i += 2;
    } else if (starts("\xE2\x88\xA7") || starts("\xE2\x88\xA8")) {  // ∧ ∨
      out.push_back({Tok::Infix, std::string(s.substr(i, 3)), i});
      i += 3;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : toks_(lex(text)), sig_(sig) {}

  ExistentialDnf formula(std::size_t tuple_length) {
    ExistentialDnf phi;
    phi.tuple_length = tuple_length;
    if (is_keyword("forall")) throw ParseError("not existential", peek().pos);
    if (is_keyword("exists")) {
      ++pos_;
      while (peek().kind == Tok::Ident && !is_reserved(peek().text))
        phi.bound_vars.push_back(toks_[pos_++].text);
      if (phi.bound_vars.empty()) throw ParseError("expected bound variable", peek().pos);
      expect(Tok::Dot, "'.'");
    }
    if (is_keyword("exists") || is_keyword("forall"))
      throw ParseError(is_keyword("forall") ? "not existential"
                                            : "nested quantifier is not in prenex shape",
                       peek().pos);
    phi.disjuncts.push_back(conj());
    while (is_keyword("or")) {
      ++pos_;
      phi.disjuncts.push_back(conj());
    }
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return phi;
  }

  Term lone_term() {
    Term t = term();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool is_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  static bool is_reserved(std::string_view w) {
    return w == "exists" || w == "forall" || w == "and" || w == "or" || w == "not" ||
           w == "true";
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'",
                       peek().pos);
    ++pos_;
  }

  std::vector<Literal> conj() {
    std::vector<Literal> lits = item();
    while (is_keyword("and")) {
      ++pos_;
      auto more = item();
      lits.insert(lits.end(), more.begin(), more.end());
    }
    return lits;
  }

  std::vector<Literal> item() {
    if (is_keyword("true")) {
      ++pos_;
      return {};
    }
    if (is_keyword("not")) throw ParseError("general negation is not supported; use !=", peek().pos);
    if (is_keyword("forall")) throw ParseError("not existential", peek().pos);
    if (is_keyword("exists"))
      throw ParseError("nested quantifier is not in prenex shape", peek().pos);
    if (peek().kind == Tok::LParen) {
      // Either a parenthesized conjunction or a literal whose left side
      // starts with a parenthesized term: try the former, then backtrack.
      const std::size_t saved = pos_;
      std::optional<ParseError> group_error;
      try {
        ++pos_;
        auto lits = conj();
        if (is_keyword("or"))
          throw ParseError("disjunction inside a conjunction is not in DNF shape", peek().pos);
        expect(Tok::RParen, "')'");
        const Tok next = peek().kind;
        if (next != Tok::Eq && next != Tok::Neq && next != Tok::Infix) return lits;
      } catch (const ParseError& e) {
        group_error = e;
      }
      pos_ = saved;
      try {
        return {literal()};
      } catch (const ParseError& e) {
        if (group_error && group_error->position() >= e.position()) throw *group_error;
        throw;
      }
    }
    return {literal()};
  }

  Literal literal() {
    Literal lit;
    lit.lhs = term();
    if (peek().kind == Tok::Eq) {
      lit.positive = true;
    } else if (peek().kind == Tok::Neq) {
      lit.positive = false;
    } else {
      throw ParseError("expected '=' or '!=', found '" + peek().text + "'", peek().pos);
    }
    ++pos_;
    lit.rhs = term();
    return lit;
  }

  Term term() {
    Term left = primary();
    if (peek().kind != Tok::Infix) return left;
    const Token op = toks_[pos_++];
    Term right = primary();
    if (peek().kind == Tok::Infix)
      throw ParseError("parentheses required when nesting infix operators", peek().pos);
    auto idx = sig_.find(op.text);
    if (!idx) throw ParseError("unknown symbol '" + op.text + "'", op.pos);
    if (sig_[*idx].arity != 2)
      throw ParseError("symbol '" + op.text + "' is not binary", op.pos);
    return Term::apply(sig_[*idx].name, {std::move(left), std::move(right)});
  }

  Term primary() {
    if (peek().kind == Tok::LParen) {
      ++pos_;
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (peek().kind != Tok::Ident || is_reserved(peek().text))
      throw ParseError("expected term, found '" + peek().text + "'", peek().pos);
    const Token id = toks_[pos_++];
    auto idx = sig_.find(id.text);
    if (peek().kind == Tok::LParen) {
      if (!idx) throw ParseError("unknown symbol '" + id.text + "'", id.pos);
      ++pos_;
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          ++pos_;
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
      if (args.size() != sig_[*idx].arity)
        throw ParseError("symbol '" + id.text + "' expects " +
                             std::to_string(sig_[*idx].arity) + " arguments",
                         id.pos);
      return Term::apply(sig_[*idx].name, std::move(args));
    }
    if (idx) {
      if (sig_[*idx].arity != 0)
        throw ParseError("symbol '" + id.text + "' used without arguments", id.pos);
      return Term::apply(sig_[*idx].name);
    }
    return Term::variable(id.text);
  }

  std::vector<Token> toks_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

void check_variables(const ExistentialDnf& phi, const Signature& sig) {
  const auto roles = role_names(phi.tuple_length);
  std::set<std::string> allowed(roles.begin(), roles.end());
  for (const auto& w : phi.bound_vars) {
    if (allowed.count(w))
      throw ValidationError("bound variable '" + w + "' repeats or shadows a reserved role");
    if (sig.find(w)) throw ValidationError("bound variable '" + w + "' is a symbol name");
    allowed.insert(w);
  }
  for (const auto& d : phi.disjuncts)
    for (const auto& lit : d) {
      std::set<std::string> vars;
      lit.lhs.collect_variables(vars);
      lit.rhs.collect_variables(vars);
      for (const auto& v : vars)
        if (!allowed.count(v))
          throw ValidationError("free variable '" + v + "' is neither a role (x, y, z1..z" +
                                std::to_string(phi.tuple_length) + ") nor bound");
    }
}

std::string render_conjunction(const std::vector<Literal>& lits) {
  if (lits.empty()) return "(true)";
  std::string out = "(";
  for (std::size_t j = 0; j < lits.size(); ++j) {
    if (j) out += " and ";
    out += to_string(lits[j]);
  }
  return out + ")";
}

std::string render_prefix(const std::vector<std::string>& bound) {
  if (bound.empty()) return {};
  std::string out = "exists";
  for (const auto& w : bound) out += " " + w;
  return out + " . ";
}

}  // namespace

std::vector<std::size_t> ExistentialDnf::positive_indices(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < disjuncts.at(k).size(); ++j)
    if (disjuncts[k][j].positive) out.push_back(j);
  return out;
}

bool ExistentialDnf::has_negative_literal() const {
  for (const auto& d : disjuncts)
    for (const auto& lit : d)
      if (!lit.positive) return true;
  return false;
}

bool PositiveExistential::all_positive() const {
  return std::all_of(literals.begin(), literals.end(),
                     [](const Literal& l) { return l.positive; });
}

ExistentialDnf PositiveExistential::as_dnf() const {
  return {tuple_length, bound_vars, {literals}};
}

std::vector<std::string> role_names(std::size_t tuple_length) {
  std::vector<std::string> names{"x", "y"};
  for (std::size_t i = 1; i <= tuple_length; ++i) names.push_back("z" + std::to_string(i));
  return names;
}

ExistentialDnf parse_formula(std::string_view text, const Signature& sig,
                             std::size_t tuple_length) {
  if (tuple_length == 0) throw ValidationError("tuple length l must be positive");
  ExistentialDnf phi = Parser(text, sig).formula(tuple_length);
  check_variables(phi, sig);
  return phi;
}

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(text, sig).lone_term();
}

std::string to_string(const Literal& lit) {
  return to_string(lit.lhs) + (lit.positive ? " = " : " != ") + to_string(lit.rhs);
}

std::string to_string(const ExistentialDnf& phi) {
  std::string out = render_prefix(phi.bound_vars);
  for (std::size_t k = 0; k < phi.disjuncts.size(); ++k) {
    if (k) out += " or ";
    out += render_conjunction(phi.disjuncts[k]);
  }
  return out;
}

std::string to_string(const PositiveExistential& psi) {
  return render_prefix(psi.bound_vars) + render_conjunction(psi.literals);
}

PositiveExistential strip_to_positive(const ExistentialDnf& phi, std::size_t k) {
  if (k >= phi.disjuncts.size())
    throw ValidationError("disjunct index " + std::to_string(k) + " out of range");
  PositiveExistential psi{phi.tuple_length, phi.bound_vars, {}, std::nullopt};
  for (const auto& lit : phi.disjuncts[k])
    if (lit.positive) psi.literals.push_back(lit);
  if (psi.literals.empty())
    psi.warning = "disjunct " + std::to_string(k + 1) +
                  " has no positive literal; the result is constantly true";
  return psi;
}

// ---------------------------------------------------------------------------
// Compiled evaluation

namespace {

constexpr std::size_t kMaxStack = 64;

void lower(const Term& t, const Signature& sig, const std::map<std::string, std::int32_t>& slot,
           std::vector<std::int32_t>& code) {
  if (t.is_variable()) {
    auto it = slot.find(t.name);
    if (it == slot.end()) throw ValidationError("unbound variable '" + t.name + "'");
    code.push_back(-1 - it->second);
    return;
  }
  auto op = sig.find(t.name);
  if (!op) throw ValidationError("unknown symbol '" + t.name + "'");
  if (sig[*op].arity != t.args.size())
    throw ValidationError("arity mismatch for '" + t.name + "'");
  for (const auto& a : t.args) lower(a, sig, slot, code);
  code.push_back(static_cast<std::int32_t>(*op));
}

std::size_t stack_need(const std::vector<std::int32_t>& code, const Signature& sig) {
  std::size_t top = 0, peak = 0;
  for (std::int32_t c : code) {
    top = c < 0 ? top + 1 : top - sig[static_cast<std::size_t>(c)].arity + 1;
    peak = std::max(peak, top);
  }
  return peak;
}

bool mentions_bound(const std::vector<std::int32_t>& code, std::int32_t first_bound) {
  return std::any_of(code.begin(), code.end(),
                     [&](std::int32_t c) { return c < 0 && -1 - c >= first_bound; });
}

}  // namespace

CompiledFormula::CompiledFormula(const ExistentialDnf& phi, const Signature& sig)
    : tuple_length_(phi.tuple_length), bound_count_(phi.bound_vars.size()) {
  std::map<std::string, std::int32_t> slot;
  std::int32_t next = 0;
  for (const auto& r : role_names(tuple_length_)) slot[r] = next++;
  const std::int32_t first_bound = next;
  for (const auto& w : phi.bound_vars) slot[w] = next++;
  for (const auto& d : phi.disjuncts) {
    std::vector<CompiledLiteral> lits;
    for (const auto& lit : d) {
      CompiledLiteral c{{}, {}, lit.positive, false};
      lower(lit.lhs, sig, slot, c.lhs);
      lower(lit.rhs, sig, slot, c.rhs);
      if (stack_need(c.lhs, sig) > kMaxStack || stack_need(c.rhs, sig) > kMaxStack)
        throw ValidationError("term nesting too deep in literal '" + to_string(lit) + "'");
      c.uses_bound = mentions_bound(c.lhs, first_bound) || mentions_bound(c.rhs, first_bound);
      lits.push_back(std::move(c));
    }
    disjuncts_.push_back(std::move(lits));
  }
}

Element CompiledFormula::run(const FiniteAlgebra& a, const std::vector<std::int32_t>& code,
                             std::span<const Element> slots) const {
  Element stack[kMaxStack];
  std::size_t top = 0;
  const auto& sig = a.signature();
  for (std::int32_t c : code) {
    if (c < 0) {
      stack[top++] = slots[static_cast<std::size_t>(-1 - c)];
      continue;
    }
    const auto op = static_cast<std::size_t>(c);
    const std::size_t k = sig[op].arity;
    top -= k;
    stack[top] = a.apply(op, std::span<const Element>(stack + top, k));
    ++top;
  }
  return stack[0];
}

bool CompiledFormula::check(const FiniteAlgebra& a, const CompiledLiteral& lit,
                            std::span<const Element> slots) const {
  return (run(a, lit.lhs, slots) == run(a, lit.rhs, slots)) == lit.positive;
}

bool CompiledFormula::free_part_holds(const FiniteAlgebra& a, std::span<const Element> slots,
                                      std::size_t k) const {
  for (const auto& lit : disjuncts_[k])
    if (!lit.uses_bound && !check(a, lit, slots)) return false;
  return true;
}

bool CompiledFormula::bound_part_holds(const FiniteAlgebra& a, std::span<const Element> slots,
                                       std::size_t k) const {
  for (const auto& lit : disjuncts_[k])
    if (lit.uses_bound && !check(a, lit, slots)) return false;
  return true;
}

bool CompiledFormula::literal_holds(const FiniteAlgebra& a, std::span<const Element> slots,
                                    std::size_t k, std::size_t j) const {
  return check(a, disjuncts_[k][j], slots);
}

std::optional<std::vector<Element>> CompiledFormula::first_witness(const FiniteAlgebra& a,
                                                                   std::span<Element> slots,
                                                                   std::size_t k) const {
  std::optional<std::vector<Element>> found;
  for_each_witness(a, slots, k, [&](const std::vector<Element>& w) {
    found = w;
    return false;
  });
  return found;
}

bool CompiledFormula::holds(const FiniteAlgebra& a, Element x, Element y,
                            std::span<const Element> z) const {
  if (z.size() != tuple_length_) throw ValidationError("z tuple has the wrong length");
  std::vector<Element> slots(slot_count(), 0);
  slots[0] = x;
  slots[1] = y;
  std::copy(z.begin(), z.end(), slots.begin() + 2);
  for (std::size_t k = 0; k < disjuncts_.size(); ++k)
    if (first_witness(a, slots, k)) return true;
  return false;
}

bool eval_dnf(const FiniteAlgebra& a, const ExistentialDnf& phi, Element x, Element y,
              std::span<const Element> z) {
  return CompiledFormula(phi, a.signature()).holds(a, x, y, z);
}

bool eval_in_product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                     const ExistentialDnf& phi, std::pair<Element, Element> left,
                     std::pair<Element, Element> right, std::span<const Element> z_a,
                     std::span<const Element> z_b) {
  const FiniteAlgebra p = direct_product(a, b);
  const ProductEncoding enc{b.size()};
  if (z_a.size() != z_b.size()) throw ValidationError("z tuples differ in length");
  std::vector<Element> z(z_a.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = enc.encode(z_a[i], z_b[i]);
  return eval_dnf(p, phi, enc.encode(left.first, left.second),
                  enc.encode(right.first, right.second), z);
}

}  // namespace factorlab
