// json.cpp - JSON encoders and decoders for the shipped schema
#include "twoside/json.hpp"

#include <stdexcept>

#include "twoside/parser.hpp"

namespace twoside {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string str(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) bad(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

const Json& arr(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) bad(std::string("field '") + name + "' must be an array");
  return v;
}

std::vector<std::string> strings(const Json& j, const char* name) {
  std::vector<std::string> out;
  for (const auto& v : arr(j, name)) {
    if (!v.is_string()) bad(std::string("field '") + name + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Json typing_to_json(const std::optional<Typing>& t) {
  if (!t) return nullptr;
  return Json{{"term", term_to_json(t->term)}, {"type", type_to_json(t->type)}};
}

std::optional<Typing> typing_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return Typing{term_from_json(field(j, "term")), type_from_json(field(j, "type"))};
}

std::string_view outcome_name(EvalOutcome::Kind k) {
  switch (k) {
    case EvalOutcome::Kind::Value: return "Value";
    case EvalOutcome::Kind::Stuck: return "Stuck";
    case EvalOutcome::Kind::OutOfFuel: return "OutOfFuel";
  }
  return "?";
}

}  // namespace

Json type_to_json(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Ok: return Json{{"kind", "ok"}};
    case TypeKind::Var: return Json{{"kind", "var"}, {"name", t.name()}};
    case TypeKind::To:
    case TypeKind::Nec:
      return Json{{"kind", t.is_to() ? "to" : "nec"}, {"dom", type_to_json(t.dom())}, {"cod", type_to_json(t.cod())}};
    case TypeKind::Sum: {
      Json ss = Json::array();
      for (const auto& s : t.summands()) {
        Json args = Json::array();
        for (const auto& a : s.args) args.push_back(type_to_json(a));
        ss.push_back(Json{{"ctor", s.ctor}, {"args", std::move(args)}});
      }
      return Json{{"kind", "sum"}, {"summands", std::move(ss)}};
    }
  }
  bad("unreachable type kind");
}

Type type_from_json(const Json& j) {
  std::string k = str(j, "kind");
  if (k == "ok") return Type::ok();
  if (k == "var") return Type::var(str(j, "name"));
  if (k == "to") return Type::to(type_from_json(field(j, "dom")), type_from_json(field(j, "cod")));
  if (k == "nec") return Type::nec(type_from_json(field(j, "dom")), type_from_json(field(j, "cod")));
  if (k == "sum") {
    std::vector<Summand> ss;
    for (const auto& s : arr(j, "summands")) {
      Summand out{str(s, "ctor"), {}};
      for (const auto& a : arr(s, "args")) out.args.push_back(type_from_json(a));
      ss.push_back(std::move(out));
    }
    return Type::sum(std::move(ss));
  }
  bad("unknown type kind '" + k + "'");
}

Json term_to_json(const Term& t) {
  switch (t.kind()) {
    case TermKind::Local: return Json{{"kind", "local"}, {"name", t.name()}};
    case TermKind::Top: return Json{{"kind", "top"}, {"name", t.name()}};
    case TermKind::Ctor: {
      Json args = Json::array();
      for (const auto& a : t.args()) args.push_back(term_to_json(a));
      return Json{{"kind", "ctor"}, {"name", t.name()}, {"args", std::move(args)}};
    }
    case TermKind::App: return Json{{"kind", "app"}, {"fn", term_to_json(t.fn())}, {"arg", term_to_json(t.arg())}};
    case TermKind::Abs:
    case TermKind::Fix:
      return Json{{"kind", t.kind() == TermKind::Abs ? "abs" : "fix"}, {"binder", t.name()}, {"body", term_to_json(t.body())}};
    case TermKind::Match: {
      Json bs = Json::array();
      for (const auto& b : t.branches())
        bs.push_back(Json{{"ctor", b.pattern.ctor}, {"vars", b.pattern.vars}, {"body", term_to_json(b.body)}});
      return Json{{"kind", "match"}, {"scrutinee", term_to_json(t.scrutinee())}, {"branches", std::move(bs)}};
    }
  }
  bad("unreachable term kind");
}

Term term_from_json(const Json& j) {
  std::string k = str(j, "kind");
  if (k == "local") return Term::local(str(j, "name"));
  if (k == "top") return Term::top(str(j, "name"));
  if (k == "ctor") {
    std::vector<Term> args;
    for (const auto& a : arr(j, "args")) args.push_back(term_from_json(a));
    return Term::ctor(str(j, "name"), std::move(args));
  }
  if (k == "app") return Term::app(term_from_json(field(j, "fn")), term_from_json(field(j, "arg")));
  if (k == "abs") return Term::abs(str(j, "binder"), term_from_json(field(j, "body")));
  if (k == "fix") return Term::fix(str(j, "binder"), term_from_json(field(j, "body")));
  if (k == "match") {
    std::vector<Branch> bs;
    for (const auto& b : arr(j, "branches"))
      bs.push_back(Branch{Pattern{str(b, "ctor"), strings(b, "vars")}, term_from_json(field(b, "body"))});
    return Term::match(term_from_json(field(j, "scrutinee")), std::move(bs));
  }
  bad("unknown term kind '" + k + "'");
}

Json constraints_to_json(const ConstraintSet& c) {
  Json out = Json::array();
  for (const auto& k : c) out.push_back(Json{{"lhs", type_to_json(k.lhs)}, {"rhs", type_to_json(k.rhs)}});
  return out;
}

ConstraintSet constraints_from_json(const Json& j) {
  if (!j.is_array()) bad("constraints must be an array");
  ConstraintSet c;
  for (const auto& k : j) c.add(Constraint{type_from_json(field(k, "lhs")), type_from_json(field(k, "rhs"))});
  return c;
}

Json judgement_to_json(const Judgement& j) {
  Json gamma = Json::array();
  for (const auto& [x, t] : j.gamma.to_map()) gamma.push_back(Json{{"name", x}, {"type", type_to_json(t)}});
  return Json{{"gamma", std::move(gamma)},
              {"left", typing_to_json(j.left)},
              {"right", typing_to_json(j.right)},
              {"text", print_judgement(j)}};
}

Judgement judgement_from_json(const Json& j) {
  std::map<std::string, Type> gamma;
  for (const auto& b : arr(j, "gamma"))
    if (!gamma.emplace(str(b, "name"), type_from_json(field(b, "type"))).second) bad("duplicate variable in gamma");
  Judgement out{TypeEnv(gamma), typing_from_json(field(j, "left")), typing_from_json(field(j, "right"))};
  if (!out.left && !out.right) bad("judgement needs a left or right typing");
  if (out.left && out.right && out.right->term.kind() != TermKind::Local)
    bad("the right-hand side of a left judgement must be a variable typing");
  return out;
}

Json derivation_to_json(const Derivation& d) {
  if (!d) return nullptr;
  Json premises = Json::array();
  for (const auto& p : d->premises) premises.push_back(derivation_to_json(p));
  Json aux = Json::array();
  for (const auto& t : d->aux) aux.push_back(type_to_json(t));
  return Json{{"rule", std::string(to_string(d->rule))},
              {"judgement", judgement_to_json(d->judgement)},
              {"premises", std::move(premises)},
              {"aux", std::move(aux)},
              {"index", d->index}};
}

Derivation derivation_from_json(const Json& j) {
  if (j.is_null()) return nullptr;
  auto rule = rule_from_string(str(j, "rule"));
  if (!rule) bad("unknown rule '" + str(j, "rule") + "'");
  AlgNode n{*rule, judgement_from_json(field(j, "judgement")), {}, {}, 0};
  for (const auto& p : arr(j, "premises")) n.premises.push_back(derivation_from_json(p));
  for (const auto& t : arr(j, "aux")) n.aux.push_back(type_from_json(t));
  const Json& idx = field(j, "index");
  if (!idx.is_number_unsigned()) bad("field 'index' must be a non-negative integer");
  n.index = idx.get<std::size_t>();
  return std::make_shared<const AlgNode>(std::move(n));
}

Json inferred_to_json(const InferredJudgement& ij) {
  return Json{{"constraints", constraints_to_json(ij.constraints)},
              {"judgement", judgement_to_json(ij.judgement)},
              {"derivation", derivation_to_json(ij.derivation)},
              {"text", print_inferred(ij)}};
}

InferredJudgement inferred_from_json(const Json& j) {
  return InferredJudgement{constraints_from_json(field(j, "constraints")), judgement_from_json(field(j, "judgement")),
                           derivation_from_json(field(j, "derivation"))};
}

Json verdict_to_json(const Verdict& v) {
  return Json{{"verdict", std::string(to_string(v.kind))},
              {"witness", v.witness ? inferred_to_json(*v.witness) : Json(nullptr)},
              {"constraints", constraints_to_json(v.constraints)},
              {"judgements", v.judgements},
              {"truncated", v.truncated}};
}

Json eval_outcome_to_json(const EvalOutcome& o) {
  Json j{{"kind", std::string(outcome_name(o.kind))}, {"steps", o.steps}};
  j["term"] = o.term ? Json(print_term(*o.term)) : Json(nullptr);
  j["reason"] = o.reason ? Json(std::string(to_string(*o.reason))) : Json(nullptr);
  return j;
}

Json probe_to_json(const ProbeReport& r) {
  return Json{{"term", print_term(r.term)},
              {"seed", r.seed},
              {"well_typed", std::string(to_string(r.well.kind))},
              {"ill_typed", std::string(to_string(r.ill.kind))},
              {"outcome", eval_outcome_to_json(r.outcome)},
              {"violation", r.violation},
              {"exclusion_violation", r.exclusion_violation}};
}

namespace {

Json formulas_to_json(const std::vector<kernel::Formula>& fs) {
  Json out = Json::array();
  for (const auto& f : fs)
    out.push_back(Json{{"term", pcf::print_pcf_term(f.term)}, {"type", pcf::print_pcf_type(f.type)}});
  return out;
}

std::vector<kernel::Formula> formulas_from_json(const Json& j, const char* name) {
  std::vector<kernel::Formula> out;
  for (const auto& f : arr(j, name)) {
    try {
      out.push_back(kernel::Formula{pcf::parse_pcf_term(str(f, "term")), pcf::parse_pcf_type(str(f, "type"))});
    } catch (const ParseError& e) {
      bad(std::string("field '") + name + "': " + e.what());
    }
  }
  return out;
}

}  // namespace

Json kernel_derivation_to_json(const kernel::Derivation& d) {
  Json premises = Json::array();
  for (const auto& p : d->premises) premises.push_back(kernel_derivation_to_json(p));
  return Json{{"rule", d->rule},
              {"conclusion",
               Json{{"left", formulas_to_json(d->conclusion.left)}, {"right", formulas_to_json(d->conclusion.right)}}},
              {"premises", std::move(premises)}};
}

kernel::Derivation kernel_derivation_from_json(const Json& j) {
  const Json& c = field(j, "conclusion");
  kernel::Sequent s{formulas_from_json(c, "left"), formulas_from_json(c, "right")};
  std::vector<kernel::Derivation> premises;
  for (const auto& p : arr(j, "premises")) premises.push_back(kernel_derivation_from_json(p));
  return kernel::make_node(str(j, "rule"), std::move(s), std::move(premises));
}

Json kernel_document_to_json(const KernelDocument& doc) {
  return Json{{"version", kJsonVersion},
              {"system", std::string(kernel::to_string(doc.system))},
              {"derivation", kernel_derivation_to_json(doc.derivation)}};
}

KernelDocument kernel_document_from_json(const Json& j) {
  if (str(j, "version") != kJsonVersion) bad("unsupported version '" + str(j, "version") + "'");
  auto sys = kernel::system_from_string(str(j, "system"));
  if (!sys) bad("unknown system '" + str(j, "system") + "'");
  return KernelDocument{*sys, kernel_derivation_from_json(field(j, "derivation"))};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace twoside
