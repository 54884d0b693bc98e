// judgement.cpp - environments, rule names and judgement printing
#include "twoside/judgement.hpp"

#include <array>
#include <set>

#include "twoside/parser.hpp"

namespace twoside {

TypeEnv::TypeEnv(const std::map<std::string, Type>& bindings) {
  for (const auto& [name, ty] : bindings) *this = bind(name, ty);
}

TypeEnv TypeEnv::bind(std::string name, Type ty) const {
  TypeEnv out;
  out.head_ = std::make_shared<const Entry>(Entry{std::move(name), std::move(ty), head_});
  return out;
}

TypeEnv TypeEnv::erase(std::string name) const {
  if (!contains(name)) return *this;
  TypeEnv out;
  out.head_ = std::make_shared<const Entry>(Entry{std::move(name), std::nullopt, head_});
  return out;
}

const Type* TypeEnv::lookup(std::string_view name) const {
  for (const Entry* e = head_.get(); e; e = e->next.get())
    if (e->name == name) return e->type ? &*e->type : nullptr;
  return nullptr;
}

std::map<std::string, Type> TypeEnv::to_map() const {
  std::map<std::string, Type> out;
  std::set<std::string> seen;
  for (const Entry* e = head_.get(); e; e = e->next.get()) {
    if (!seen.insert(e->name).second) continue;
    if (e->type) out.emplace(e->name, *e->type);
  }
  return out;
}

namespace {
constexpr std::array<std::string_view, 18> kRuleNames = {
    "Inst2", "Var2", "VarK2", "AbsR2", "AbnR2", "AppR2", "AppL2", "CnsL2", "CnsR2",
    "MchL2", "MchR2", "FixR2", "CnsK2", "FunK2", "CnsDL21", "CnsDL22", "CnsDL23", "AbsDL2",
};
}  // namespace

std::string_view to_string(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  return std::nullopt;
}

std::string print_env(const TypeEnv& env) {
  std::string out;
  for (const auto& [name, ty] : env.to_map()) {
    if (!out.empty()) out += ", ";
    out += name + " : " + print_type(ty);
  }
  return out;
}

std::string print_judgement(const Judgement& j) {
  std::string out = print_env(j.gamma);
  auto typing = [](const Typing& t) { return print_term(t.term) + " : " + print_type(t.type); };
  if (j.left) {
    if (!out.empty()) out += ", ";
    out += typing(*j.left);
  }
  out += out.empty() ? "|-" : " |-";
  if (j.right) out += " " + typing(*j.right);
  return out;
}

std::string print_inferred(const InferredJudgement& j) {
  return print_constraints(j.constraints) + " | " + print_judgement(j.judgement);
}

}  // namespace twoside
