// twoside/parser.hpp - concrete syntax for terms, types, schemes and modules
#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twoside/term.hpp"
#include "twoside/type.hpp"

namespace twoside {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Declared schemes per top-level identifier; an identifier may carry
/// several schemes.
using SchemeEnv = std::map<std::string, std::vector<Scheme>>;

struct SourceModule {
  Signature signature = Signature::standard();
  TopModule module;
  SchemeEnv schemes;
};

/// Lowercase identifiers not bound locally resolve to top-level identifiers
/// when they appear in `tops`, and to free local variables otherwise.
[[nodiscard]] Term parse_term(std::string_view text, const Signature& sig = Signature::standard(),
                              const std::set<std::string>& tops = {});
[[nodiscard]] Type parse_type(std::string_view text, const Signature& sig = Signature::standard());
/// Throws ParseError when the scheme is not closed.
[[nodiscard]] Scheme parse_scheme(std::string_view text, const Signature& sig = Signature::standard());
[[nodiscard]] Constraint parse_constraint(std::string_view text, const Signature& sig = Signature::standard());
/// Comma or semicolon separated, optionally braced; `A == B` expands to two
/// constraints.
[[nodiscard]] ConstraintSet parse_constraints(std::string_view text,
                                              const Signature& sig = Signature::standard());
[[nodiscard]] SourceModule parse_module(std::string_view text);
/// `x : T` entries separated by commas, optionally braced.
[[nodiscard]] std::vector<std::pair<std::string, Type>> parse_bindings(
    std::string_view text, const Signature& sig = Signature::standard());

[[nodiscard]] std::string print_term(const Term& t);
[[nodiscard]] std::string print_type(const Type& t);
[[nodiscard]] std::string print_constraint(const Constraint& c);
[[nodiscard]] std::string print_constraints(const ConstraintSet& cs);
[[nodiscard]] std::string print_scheme(const Scheme& s);
[[nodiscard]] std::string print_module(const SourceModule& m);

}  // namespace twoside
