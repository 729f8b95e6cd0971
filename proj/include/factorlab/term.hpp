#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace factorlab {

/// A term over some signature: either a variable or a symbol applied to
/// arguments. Constants are applications with no arguments.
struct Term {
  enum class Kind : unsigned char { Variable, Apply };

  Kind kind = Kind::Variable;
  std::string name;
  std::vector<Term> args;

  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const noexcept { return kind == Kind::Variable; }
  bool is_closed() const;
  std::size_t depth() const;
  void collect_variables(std::set<std::string>& out) const;

  friend bool operator==(const Term&, const Term&) = default;
};

/// True for the symbol spellings that print and parse as infix operators.
bool is_infix_symbol(std::string_view name);

/// Renders a term in the formula grammar. Nested infix applications are
/// parenthesized so the output reparses to the same tree.
std::string to_string(const Term& t);

}  // namespace factorlab
