// twoside/judgement.hpp - constrained judgements and algorithmic derivations
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twoside/term.hpp"
#include "twoside/type.hpp"

namespace twoside {

/// Persistent variable environment; bind and erase share the tail.
class TypeEnv {
 public:
  TypeEnv() = default;
  explicit TypeEnv(const std::map<std::string, Type>& bindings);

  [[nodiscard]] TypeEnv bind(std::string name, Type ty) const;
  [[nodiscard]] TypeEnv erase(std::string name) const;
  [[nodiscard]] const Type* lookup(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const { return lookup(name) != nullptr; }
  [[nodiscard]] std::map<std::string, Type> to_map() const;

  friend bool operator==(const TypeEnv& a, const TypeEnv& b) { return a.to_map() == b.to_map(); }

 private:
  struct Entry {
    std::string name;
    std::optional<Type> type;  // nullopt erases
    std::shared_ptr<const Entry> next;
  };
  std::shared_ptr<const Entry> head_;
};

struct Typing {
  Term term;
  Type type;
};

/// Right mode: `Gamma |- M : A` (left empty, right the subject).
/// Left mode: `Gamma, M : A |- Delta` where Delta is empty or one variable
/// typing held in `right`.
struct Judgement {
  TypeEnv gamma;
  std::optional<Typing> left;
  std::optional<Typing> right;

  [[nodiscard]] bool is_left() const { return left.has_value(); }
  [[nodiscard]] const Term& subject() const { return is_left() ? left->term : right->term; }
  [[nodiscard]] const Type& subject_type() const { return is_left() ? left->type : right->type; }
};

enum class Rule {
  Inst2,
  Var2,
  VarK2,
  AbsR2,
  AbnR2,
  AppR2,
  AppL2,
  CnsL2,
  CnsR2,
  MchL2,
  MchR2,
  FixR2,
  CnsK2,
  FunK2,
  CnsDL21,
  CnsDL22,
  CnsDL23,
  AbsDL2,
};

[[nodiscard]] std::string_view to_string(Rule r);
[[nodiscard]] std::optional<Rule> rule_from_string(std::string_view name);

/// One algorithmic rule instance. The constraint set is shared by the whole
/// derivation and lives outside the nodes. `aux` carries the types a rule
/// introduces that do not appear in its premises' conclusions; `index` is the
/// scheme index (Inst2) or argument position (CnsL2, CnsK2).
struct AlgNode {
  Rule rule;
  Judgement judgement;
  std::vector<std::shared_ptr<const AlgNode>> premises;
  std::vector<Type> aux;
  std::size_t index = 0;
};

using Derivation = std::shared_ptr<const AlgNode>;

struct InferredJudgement {
  ConstraintSet constraints;
  Judgement judgement;
  Derivation derivation;
};

[[nodiscard]] std::string print_env(const TypeEnv& env);
[[nodiscard]] std::string print_judgement(const Judgement& j);
/// `C | judgement`
[[nodiscard]] std::string print_inferred(const InferredJudgement& j);

}  // namespace twoside
