// twoside/constraints.hpp - closure, syntactic consistency and entailment
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twoside/type.hpp"

namespace twoside {

struct ClosureReport {
  ConstraintSet closed;
  bool consistent = true;
  /// First inconsistent member met during saturation.
  std::optional<Constraint> witness;
};

/// Least superset closed under transitivity and decomposition of sums,
/// sufficiency arrows and necessity arrows. The universe is the subterms of
/// the input, so this terminates.
[[nodiscard]] ClosureReport close(const ConstraintSet& c);

[[nodiscard]] bool is_syntactically_consistent(const Constraint& k);

/// Closes c and checks every member; stops at the first inconsistency.
[[nodiscard]] bool is_consistent(std::span<const Constraint> c, std::optional<Constraint>* witness = nullptr);
[[nodiscard]] bool is_consistent(const ConstraintSet& c, std::optional<Constraint>* witness = nullptr);

/// Decides C |- A <= B for the structural subtyping rules (identity,
/// transitivity, arrow and sum congruence, Ok as top) with variable
/// reflexivity. Every subgoal of a goal-directed derivation search ranges over
/// subterms of C and the goal, so the relation is computed as a least fixpoint
/// over that universe, extended incrementally as new goals arrive. Reusable
/// across goals over the same C.
class Entailment {
 public:
  explicit Entailment(std::span<const Constraint> c);
  explicit Entailment(const ConstraintSet& c);

  [[nodiscard]] bool operator()(const Type& lhs, const Type& rhs);
  [[nodiscard]] bool operator()(const Constraint& goal) { return (*this)(goal.lhs, goal.rhs); }

 private:
  void build();
  int intern(const Type& t);
  [[nodiscard]] bool holds(int x, int y) const;
  [[nodiscard]] bool rule(int x, int y) const;
  void assert_fact(int x, int y);
  void drain();

  // The fixpoint is built on the first goal that is neither trivial nor a member.
  std::set<Constraint> members_;
  bool built_ = false;
  std::unordered_map<Type, int, TypeHash> ids_;
  std::vector<Type> types_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::unordered_set<std::uint64_t> facts_;
  std::vector<std::pair<int, int>> work_;
  int ok_ = -1;
};

[[nodiscard]] bool entails(const ConstraintSet& c, const Constraint& goal);

}  // namespace twoside
