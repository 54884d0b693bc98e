// entail_oracle.hpp - bottom-up saturation oracle for subtype entailment
#pragma once

#include <set>
#include <vector>

#include "twoside/type.hpp"

namespace twoside::testing {

/// Saturates the derivable judgements over the subterm universe of C and the
/// goal (plus Ok) under identity, reflexivity, Ok-as-top, arrow and sum
/// congruence, and transitivity through universe types, then looks the goal
/// up. Cubic per round; only for small sets.
inline bool oracle_entails(const ConstraintSet& c, const Constraint& goal) {
  std::vector<Type> all;
  for (const auto& k : c) {
    collect_subterms(k.lhs, all);
    collect_subterms(k.rhs, all);
  }
  collect_subterms(goal.lhs, all);
  collect_subterms(goal.rhs, all);
  all.push_back(Type::ok());
  std::set<Type> uniq(all.begin(), all.end());
  std::vector<Type> u(uniq.begin(), uniq.end());
  const std::size_t n = u.size();
  auto index = [&](const Type& t) {
    return static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), t) - u.begin());
  };
  std::vector<std::vector<char>> d(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 1;
    d[i][index(Type::ok())] = 1;
  }
  for (const auto& k : c) d[index(k.lhs)][index(k.rhs)] = 1;

  auto rule = [&](const Type& a, const Type& b) {
    if (a.is_to() && b.is_to()) return d[index(b.dom())][index(a.dom())] && d[index(a.cod())][index(b.cod())];
    if (a.is_nec() && b.is_nec()) return d[index(a.dom())][index(b.dom())] && d[index(b.cod())][index(a.cod())];
    if (a.is_sum() && b.is_sum()) {
      for (const auto& s : a.summands()) {
        const Summand* t = b.find(s.ctor);
        if (!t) return false;
        for (std::size_t i = 0; i < s.args.size(); ++i)
          if (!d[index(s.args[i])][index(t->args[i])]) return false;
      }
      return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][j]) continue;
        bool derivable = rule(u[i], u[j]);
        for (std::size_t k = 0; !derivable && k < n; ++k) derivable = d[i][k] && d[k][j];
        if (derivable) {
          d[i][j] = 1;
          changed = true;
        }
      }
    }
  }
  return d[index(goal.lhs)][index(goal.rhs)] != 0;
}

}  // namespace twoside::testing
