// twoside/term.hpp - constructor-language terms, values and substitution
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "twoside/type.hpp"

namespace twoside {

enum class TermKind { Local, Top, Ctor, App, Abs, Fix, Match };

struct Pattern {
  std::string ctor;
  std::vector<std::string> vars;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct Branch;

/// Immutable, structurally shared term with named binders.
class Term {
 public:
  static Term local(std::string name);
  static Term top(std::string name);
  static Term ctor(std::string name, std::vector<Term> args = {});
  static Term app(Term fn, Term arg);
  static Term abs(std::string binder, Term body);
  static Term fix(std::string binder, Term body);
  /// Throws std::invalid_argument if patterns overlap in head or share a
  /// bound name.
  static Term match(Term scrutinee, std::vector<Branch> branches);

  [[nodiscard]] TermKind kind() const;
  /// Variable or identifier name, constructor name, or binder.
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] const std::vector<Term>& args() const;
  [[nodiscard]] const Term& fn() const;
  [[nodiscard]] const Term& arg() const;
  [[nodiscard]] const Term& body() const;
  [[nodiscard]] const Term& scrutinee() const;
  [[nodiscard]] const std::vector<Branch>& branches() const;

  /// Cached: variable, abstraction, or constructor over values.
  [[nodiscard]] bool is_value() const;
  [[nodiscard]] std::size_t size() const;
  /// Free local variables, sorted.
  [[nodiscard]] const std::vector<std::string>& free_var_list() const;
  [[nodiscard]] bool has_free(const std::string& name) const;
  [[nodiscard]] bool same_node(const Term& other) const { return node_ == other.node_; }

  /// Structural (not alpha) equality.
  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Branch {
  Pattern pattern;
  Term body;

  friend bool operator==(const Branch&, const Branch&) = default;
};

[[nodiscard]] inline bool is_value(const Term& t) { return t.is_value(); }

[[nodiscard]] std::set<std::string> free_vars(const Term& t);
[[nodiscard]] bool is_closed(const Term& t);
/// Top-level identifiers referenced by t.
[[nodiscard]] std::set<std::string> top_ids(const Term& t);

/// Capture-avoiding simultaneous substitution for local variables.
[[nodiscard]] Term substitute(const Term& t, const std::map<std::string, Term>& subst);
[[nodiscard]] bool alpha_eq(const Term& a, const Term& b);

/// A name based on `base` that is not in `avoid`; deterministic.
[[nodiscard]] std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// The pair term (a, b).
[[nodiscard]] Term pair_term(Term a, Term b);

/// Throws std::invalid_argument on unknown constructors or wrong arities.
void check_term(const Term& t, const Signature& sig);

struct Definition {
  std::string name;
  Term body;
};

/// Ordered top-level definitions with distinct names.
class TopModule {
 public:
  /// Throws std::invalid_argument on duplicates.
  void define(std::string name, Term body);
  [[nodiscard]] const Term* lookup(const std::string& name) const;
  [[nodiscard]] const std::vector<Definition>& definitions() const { return defs_; }
  [[nodiscard]] bool empty() const { return defs_.empty(); }

 private:
  std::vector<Definition> defs_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace twoside
