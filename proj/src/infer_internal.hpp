// infer_internal.hpp - helpers shared by inference, validation and checking
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twoside/judgement.hpp"
#include "twoside/term.hpp"
#include "twoside/type.hpp"

namespace twoside::detail {

/// Sum over every signature constructor except `exclude`, with argument
/// types from `arg`.
Type ctor_sum(const Signature& sig, const std::optional<std::string>& exclude,
              const std::function<Type(const std::string& ctor, std::size_t pos)>& arg);

/// True iff t is a sum whose heads are exactly the signature constructors
/// minus `exclude`, each at its declared arity.
bool is_ctor_sum(const Type& t, const Signature& sig, const std::optional<std::string>& exclude);

/// p[B_x/x] as a single-summand sum.
Type pattern_type(const Pattern& p, const std::vector<Type>& var_types);

/// Branches of a left-mode match with pattern variables renamed away from
/// the environment, the right-hand variable and the scrutinee's free
/// variables. Deterministic in its inputs.
std::vector<Branch> branches_apart(const Term& match, const TypeEnv& gamma, const std::optional<Typing>& delta);

inline Judgement right_judgement(TypeEnv gamma, Term m, Type a) {
  return Judgement{std::move(gamma), std::nullopt, Typing{std::move(m), std::move(a)}};
}

inline Judgement left_judgement(TypeEnv gamma, Term m, Type a, std::optional<Typing> delta) {
  return Judgement{std::move(gamma), Typing{std::move(m), std::move(a)}, std::move(delta)};
}

}  // namespace twoside::detail
