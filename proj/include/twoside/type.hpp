// twoside/type.hpp - monotypes, subtype constraints and constrained schemes
#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace twoside {

enum class TypeKind { Var, Ok, Sum, To, Nec };

struct Summand;

/// Immutable, structurally shared type. Sum summands are kept sorted by
/// constructor name with pairwise distinct heads.
class Type {
 public:
  Type();  // Ok

  static Type var(std::string name);
  static Type ok();
  /// Throws std::invalid_argument on duplicate heads.
  static Type sum(std::vector<Summand> summands);
  static Type empty();
  static Type ctor(std::string name, std::vector<Type> args);
  static Type to(Type dom, Type cod);
  static Type nec(Type dom, Type cod);

  [[nodiscard]] TypeKind kind() const;
  [[nodiscard]] bool is_var() const { return kind() == TypeKind::Var; }
  [[nodiscard]] bool is_ok() const { return kind() == TypeKind::Ok; }
  [[nodiscard]] bool is_sum() const { return kind() == TypeKind::Sum; }
  [[nodiscard]] bool is_to() const { return kind() == TypeKind::To; }
  [[nodiscard]] bool is_nec() const { return kind() == TypeKind::Nec; }

  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] const std::vector<Summand>& summands() const;
  [[nodiscard]] const Summand* find(std::string_view ctor) const;
  [[nodiscard]] const Type& dom() const;
  [[nodiscard]] const Type& cod() const;

  [[nodiscard]] std::size_t hash() const;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] bool same_node(const Type& other) const { return node_ == other.node_; }

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

  struct Node;

 private:
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Summand {
  std::string ctor;
  std::vector<Type> args;

  friend bool operator==(const Summand&, const Summand&) = default;
  friend std::strong_ordering operator<=>(const Summand& a, const Summand& b);
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

using TypeSubst = std::map<std::string, Type>;

[[nodiscard]] Type apply_type_subst(const Type& ty, const TypeSubst& subst);
[[nodiscard]] std::set<std::string> free_type_vars(const Type& ty);
void collect_type_vars(const Type& ty, std::set<std::string>& out);
/// Every subterm of ty (including ty), appended in preorder.
void collect_subterms(const Type& ty, std::vector<Type>& out);

/// lhs <= rhs
struct Constraint {
  Type lhs;
  Type rhs;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend std::strong_ordering operator<=>(const Constraint& a, const Constraint& b);
};

struct ConstraintHash {
  std::size_t operator()(const Constraint& c) const {
    return c.lhs.hash() * 1000003u ^ c.rhs.hash();
  }
};

/// Finite set of constraints in canonical order.
class ConstraintSet {
 public:
  using const_iterator = std::set<Constraint>::const_iterator;

  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<Constraint> cs) : items_(cs) {}

  bool add(Constraint c) { return items_.insert(std::move(c)).second; }
  void add_all(const ConstraintSet& other) { items_.insert(other.begin(), other.end()); }
  [[nodiscard]] bool contains(const Constraint& c) const { return items_.count(c) != 0; }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] const_iterator begin() const { return items_.begin(); }
  [[nodiscard]] const_iterator end() const { return items_.end(); }
  [[nodiscard]] bool subset_of(const ConstraintSet& other) const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::set<Constraint> items_;
};

[[nodiscard]] ConstraintSet subst_constraints(const ConstraintSet& cs, const TypeSubst& subst);
void collect_type_vars(const ConstraintSet& cs, std::set<std::string>& out);

/// forall vars. constraints => body; closed over vars.
struct Scheme {
  std::vector<std::string> vars;
  ConstraintSet constraints;
  Type body;

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

/// Free type variables of the scheme that are not quantified.
[[nodiscard]] std::set<std::string> scheme_free_vars(const Scheme& s);

/// Constructor name to arity. Always contains Pair/2.
class Signature {
 public:
  Signature();
  /// Pair, Zero, Succ, Nil, Cons, True, False.
  static Signature standard();

  /// Throws std::invalid_argument on a conflicting redeclaration.
  void add(const std::string& name, std::size_t arity);
  [[nodiscard]] std::optional<std::size_t> arity(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const { return arity(name).has_value(); }
  [[nodiscard]] const std::map<std::string, std::size_t, std::less<>>& entries() const { return arities_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, std::size_t, std::less<>> arities_;
};

inline constexpr std::string_view kPairCtor = "Pair";

/// Checks summand heads and arities against the signature; throws
/// std::invalid_argument naming the offending constructor.
void check_type(const Type& ty, const Signature& sig);

}  // namespace twoside
