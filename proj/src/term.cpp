#include "factorlab/term.hpp"

#include <algorithm>
#include <array>

namespace factorlab {

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Variable;
  t.name = std::move(name);
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Apply;
  t.name = std::move(symbol);
  t.args = std::move(args);
  return t;
}

bool Term::is_closed() const {
  if (is_variable()) return false;
  return std::all_of(args.begin(), args.end(),
                     [](const Term& a) { return a.is_closed(); });
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args) d = std::max(d, a.depth() + 1);
  return d;
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (is_variable()) {
    out.insert(name);
    return;
  }
  for (const auto& a : args) a.collect_variables(out);
}

bool is_infix_symbol(std::string_view name) {
  static constexpr std::array<std::string_view, 7> kInfix = {
      "+", "*", "\xC2\xB7", "/\\", "\\/", "\xE2\x88\xA7", "\xE2\x88\xA8"};
  return std::find(kInfix.begin(), kInfix.end(), name) != kInfix.end();
}

namespace {

void render(const Term& t, bool nested, std::string& out) {
  if (t.is_variable() || t.args.empty()) {
    out += t.name;
    return;
  }
  if (t.args.size() == 2 && is_infix_symbol(t.name)) {
    if (nested) out += '(';
    render(t.args[0], true, out);
    out += ' ';
    out += t.name;
    out += ' ';
    render(t.args[1], true, out);
    if (nested) out += ')';
    return;
  }
  out += t.name;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    render(t.args[i], false, out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  render(t, false, out);
  return out;
}

}  // namespace factorlab
