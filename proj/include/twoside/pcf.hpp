// twoside/pcf.hpp - the PCF-like kernel language: terms, types, reduction
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace twoside::pcf {

enum class PcfTermKind { Zero, Succ, Pred, IfZ, Var, Abs, App, Fix, Pair, Let };

/// Immutable term with named binders. Let binds two names over its body.
class PcfTerm {
 public:
  static PcfTerm zero();
  static PcfTerm succ(PcfTerm m);
  static PcfTerm pred(PcfTerm m);
  static PcfTerm ifz(PcfTerm guard, PcfTerm then_branch, PcfTerm else_branch);
  static PcfTerm var(std::string name);
  static PcfTerm abs(std::string x, PcfTerm body);
  static PcfTerm app(PcfTerm fn, PcfTerm arg);
  static PcfTerm fix(std::string x, PcfTerm body);
  static PcfTerm pair(PcfTerm fst, PcfTerm snd);
  /// Throws std::invalid_argument when x == y.
  static PcfTerm let(std::string x, std::string y, PcfTerm scrutinee, PcfTerm body);

  /// succ^n(zero)
  static PcfTerm numeral(std::size_t n);
  /// fix x. x
  static PcfTerm div();
  /// fun x -> x
  static PcfTerm id();

  [[nodiscard]] PcfTermKind kind() const;
  /// Variable name or first binder.
  [[nodiscard]] const std::string& name() const;
  /// Second binder of a let.
  [[nodiscard]] const std::string& name2() const;
  /// Children in source order: succ/pred/abs/fix have one, app/pair/let two,
  /// ifz three. For let, child 0 is the scrutinee and child 1 the body.
  [[nodiscard]] const PcfTerm& child(std::size_t i) const;
  [[nodiscard]] std::size_t arity() const;

  [[nodiscard]] bool is_value() const;
  [[nodiscard]] std::optional<std::size_t> as_numeral() const;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] const std::set<std::string>& free_vars() const;
  [[nodiscard]] bool is_closed() const { return free_vars().empty(); }

  friend bool operator==(const PcfTerm& a, const PcfTerm& b);

  struct Node;

 private:
  explicit PcfTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

[[nodiscard]] bool alpha_eq(const PcfTerm& a, const PcfTerm& b);
/// Printed form of the term with binders renamed canonically; equal keys
/// iff alpha-equivalent.
[[nodiscard]] std::string alpha_key(const PcfTerm& t);
/// Capture-avoiding substitution of closed or open terms.
[[nodiscard]] PcfTerm substitute(const PcfTerm& t, const std::string& x, const PcfTerm& v);

enum class PcfTypeKind { Nat, Ok, Atom, Prod, To, Nec, Comp };

/// Immutable type. `comp` cancels double complements.
class PcfType {
 public:
  static PcfType nat();
  static PcfType ok();
  /// Schematic type variable such as A.
  static PcfType atom(std::string name);
  static PcfType prod(PcfType a, PcfType b);
  static PcfType to(PcfType a, PcfType b);
  static PcfType nec(PcfType a, PcfType b);
  static PcfType comp(PcfType a);

  [[nodiscard]] PcfTypeKind kind() const;
  [[nodiscard]] const std::string& name() const;
  /// Left component, domain, or complemented type.
  [[nodiscard]] const PcfType& left() const;
  [[nodiscard]] const PcfType& right() const;

  [[nodiscard]] bool is(PcfTypeKind k) const { return kind() == k; }
  [[nodiscard]] bool is_arrow() const { return is(PcfTypeKind::To) || is(PcfTypeKind::Nec); }

  friend bool operator==(const PcfType& a, const PcfType& b);
  friend bool operator<(const PcfType& a, const PcfType& b);

  struct Node;

 private:
  explicit PcfType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// B ~> A rewritten to B^c -> A^c everywhere.
[[nodiscard]] PcfType expand_nec(const PcfType& t);

/// Both types are Nat, arrows or products and their shapes differ. Ok,
/// atoms and complements are disjoint from nothing.
[[nodiscard]] bool disjoint(const PcfType& a, const PcfType& b);
/// Built from Nat, Ok, atoms and products.
[[nodiscard]] bool finitely_verifiable(const PcfType& t);

/// Throws ParseError (parser.hpp) with a position on malformed input.
[[nodiscard]] PcfTerm parse_pcf_term(std::string_view text);
[[nodiscard]] PcfType parse_pcf_type(std::string_view text);
[[nodiscard]] std::string print_pcf_term(const PcfTerm& t);
[[nodiscard]] std::string print_pcf_type(const PcfType& t);

struct PcfOutcome {
  enum class Kind { Value, Stuck, OutOfFuel };
  Kind kind;
  PcfTerm term;  // the value, the stuck term, or the last term reached
  std::string reason;
  std::size_t steps = 0;
};

[[nodiscard]] std::string_view to_string(PcfOutcome::Kind k);

/// Call-by-value reduction under evaluation contexts, at most `fuel` steps.
/// Throws std::invalid_argument on an open term.
[[nodiscard]] PcfOutcome pcf_evaluate(const PcfTerm& m, std::size_t fuel);

enum class Membership { In, Out, OutOfFuel };

[[nodiscard]] std::string_view to_string(Membership m);

/// Membership of m in the success-semantics interpretation of a first-order
/// type: going wrong is in, a value is tested structurally, running out of
/// fuel is inconclusive. Throws std::invalid_argument on arrows and atoms.
[[nodiscard]] Membership success_oracle(const PcfTerm& m, const PcfType& a, std::size_t fuel);

/// Closed term of roughly `size` nodes, deterministic in `seed`. Shape
/// errors (pred of a pair, a numeral applied) arise from the uniform mix.
[[nodiscard]] PcfTerm gen_pcf_term(std::size_t size, std::uint64_t seed);

}  // namespace twoside::pcf
