// toplevel.cpp - checking definitions against declared schemes
#include <algorithm>
#include <unordered_map>

#include "infer_internal.hpp"
#include "twoside/constraints.hpp"
#include "twoside/infer.hpp"

namespace twoside {

namespace {

using detail::left_judgement;
using detail::right_judgement;

Derivation node(Rule r, Judgement j, std::vector<Derivation> premises = {}, std::vector<Type> aux = {},
                std::size_t index = 0) {
  return std::make_shared<const AlgNode>(AlgNode{r, std::move(j), std::move(premises), std::move(aux), index});
}

// Bound on scheme instantiations tried per identifier occurrence.
constexpr std::size_t kInstantiationBudget = 4096;

bool match_into(const Type& pat, const Type& target, const std::set<std::string>& vars, TypeSubst& s) {
  if (pat.is_var() && vars.count(pat.name())) {
    auto it = s.find(pat.name());
    if (it == s.end()) {
      s.emplace(pat.name(), target);
      return true;
    }
    return it->second == target;
  }
  if (pat.kind() != target.kind()) return false;
  switch (pat.kind()) {
    case TypeKind::Ok: return true;
    case TypeKind::Var: return pat.name() == target.name();
    case TypeKind::To:
    case TypeKind::Nec: return match_into(pat.dom(), target.dom(), vars, s) && match_into(pat.cod(), target.cod(), vars, s);
    case TypeKind::Sum: {
      if (pat.summands().size() != target.summands().size()) return false;
      for (std::size_t i = 0; i < pat.summands().size(); ++i) {
        const auto& a = pat.summands()[i];
        const auto& b = target.summands()[i];
        if (a.ctor != b.ctor || a.args.size() != b.args.size()) return false;
        for (std::size_t j = 0; j < a.args.size(); ++j)
          if (!match_into(a.args[j], b.args[j], vars, s)) return false;
      }
      return true;
    }
  }
  return false;
}

// Goal-directed derivation search with every result type fixed by the goal
// and unknown intermediate types drawn from `pool_`.
class Searcher {
 public:
  Searcher(const ConstraintSet& c, const SchemeEnv& schemes, const Signature& sig, std::vector<Type> pool)
      : ent_(c), schemes_(schemes), sig_(sig), pool_(std::move(pool)) {}

  Derivation right(const TypeEnv& g, const Term& m, const Type& a) {
    std::string key = "R|" + print_env(g) + "|" + print_term(m) + "|" + print_type(a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Derivation d = right_uncached(g, m, a);
    memo_.emplace(std::move(key), d);
    return d;
  }

  Derivation left(const TypeEnv& g, const Term& m, const Type& a, const std::optional<Typing>& d) {
    std::string key = "L|" + print_env(g) + "|" + print_term(m) + "|" + print_type(a) + "|" +
                      (d ? d->term.name() + ":" + print_type(d->type) : "");
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Derivation out = left_uncached(g, m, a, d);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  bool e(const Type& l, const Type& r) { return ent_(l, r); }

  Type ok_sum(const std::optional<std::string>& exclude) {
    return detail::ctor_sum(sig_, exclude, [](const std::string&, std::size_t) { return Type::ok(); });
  }

  Derivation right_uncached(const TypeEnv& g, const Term& m, const Type& a) {
    auto j = right_judgement(g, m, a);
    switch (m.kind()) {
      case TermKind::Local: {
        const Type* t = g.lookup(m.name());
        if (t && e(*t, a)) return node(Rule::Var2, j);
        if (e(Type::ok(), a)) return node(Rule::VarK2, j);
        return nullptr;
      }
      case TermKind::Top: return instantiate(j, m.name(), a);
      case TermKind::Abs: {
        for (const auto& t : arrow_candidates(a, true)) {
          if (!e(t, a)) continue;
          if (auto p = right(g.bind(m.name(), t.dom()), m.body(), t.cod()))
            return node(Rule::AbsR2, j, {p}, {t.dom(), t.cod()});
        }
        for (const auto& t : arrow_candidates(a, false)) {
          if (!e(t, a)) continue;
          if (auto p = left(g.erase(m.name()), m.body(), t.cod(), Typing{Term::local(m.name()), t.dom()}))
            return node(Rule::AbnR2, j, {p}, {t.cod(), t.dom()});
        }
        return nullptr;
      }
      case TermKind::App: {
        for (const auto& b2 : pool_) {
          auto q = right(g, m.arg(), b2);
          if (!q) continue;
          if (auto p = right(g, m.fn(), Type::to(b2, a))) return node(Rule::AppR2, j, {p, q});
        }
        return nullptr;
      }
      case TermKind::Ctor: {
        for (const auto& args : ctor_arg_candidates(m.name(), m.args().size(), a)) {
          if (!e(Type::ctor(m.name(), args), a)) continue;
          std::vector<Derivation> prem;
          for (std::size_t i = 0; i < args.size(); ++i) {
            auto p = right(g, m.args()[i], args[i]);
            if (!p) break;
            prem.push_back(p);
          }
          if (prem.size() == args.size()) return node(Rule::CnsR2, j, std::move(prem));
        }
        return nullptr;
      }
      case TermKind::Match: return match_right(g, m, a);
      case TermKind::Fix: {
        if (auto p = right(g.bind(m.name(), a), m.body(), a)) return node(Rule::FixR2, j, {p});
        return nullptr;
      }
    }
    return nullptr;
  }

  Derivation instantiate(const Judgement& j, const std::string& f, const Type& a) {
    auto it = schemes_.find(f);
    if (it == schemes_.end()) return nullptr;
    for (std::size_t idx = 0; idx < it->second.size(); ++idx) {
      const Scheme& sch = it->second[idx];
      std::set<std::string> vars(sch.vars.begin(), sch.vars.end());
      TypeSubst s;
      if (!match_into(sch.body, a, vars, s)) s.clear();
      std::vector<std::string> open;
      for (const auto& v : sch.vars)
        if (!s.count(v)) open.push_back(v);
      std::vector<std::size_t> pick(open.size(), 0);
      for (std::size_t tries = 0; tries < kInstantiationBudget; ++tries) {
        for (std::size_t i = 0; i < open.size(); ++i) s[open[i]] = pool_[pick[i]];
        std::vector<Type> args;
        for (const auto& v : sch.vars) args.push_back(s.at(v));
        Instance inst = instantiate_scheme(sch, args);
        bool ok = e(inst.type, a);
        for (auto k = inst.obligations.begin(); ok && k != inst.obligations.end(); ++k) ok = e(k->lhs, k->rhs);
        if (ok) return node(Rule::Inst2, j, {}, args, idx);
        std::size_t i = 0;
        while (i < open.size() && ++pick[i] == pool_.size()) pick[i++] = 0;
        if (i == open.size()) break;
      }
    }
    return nullptr;
  }

  std::vector<Type> arrow_candidates(const Type& a, bool sufficiency) {
    std::vector<Type> out;
    auto want = [&](const Type& t) { return sufficiency ? t.is_to() : t.is_nec(); };
    if (want(a)) out.push_back(a);
    for (const auto& t : pool_)
      if (want(t) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return out;
  }

  std::vector<std::vector<Type>> ctor_arg_candidates(const std::string& c, std::size_t n, const Type& a) {
    std::vector<std::vector<Type>> out;
    auto add = [&](std::vector<Type> v) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    };
    if (n == 0) {
      add({});
      return out;
    }
    if (a.is_sum())
      if (const Summand* s = a.find(c)) add(s->args);
    for (const auto& t : pool_)
      if (t.is_sum())
        if (const Summand* s = t.find(c); s && s->args.size() == n) add(s->args);
    add(std::vector<Type>(n, Type::ok()));
    return out;
  }

  Derivation match_right(const TypeEnv& g, const Term& m, const Type& a) {
    const auto& brs = m.branches();
    std::set<std::string> heads;
    for (const auto& br : brs) heads.insert(br.pattern.ctor);
    std::vector<Type> scrut_types;
    if (m.scrutinee().kind() == TermKind::Local)
      if (const Type* t = g.lookup(m.scrutinee().name())) scrut_types.push_back(*t);
    for (const auto& t : pool_)
      if (std::find(scrut_types.begin(), scrut_types.end(), t) == scrut_types.end()) scrut_types.push_back(t);
    for (const auto& b : scrut_types) {
      auto q = right(g, m.scrutinee(), b);
      if (!q) continue;
      std::vector<Type> bounds;
      if (b.is_sum()) bounds.push_back(b);
      for (const auto& t : pool_)
        if (t.is_sum() && e(b, t)) bounds.push_back(t);
      for (const auto& bound : bounds) {
        bool inside = std::all_of(bound.summands().begin(), bound.summands().end(),
                                  [&](const Summand& s) { return heads.count(s.ctor) != 0; });
        if (!inside) continue;
        std::vector<Type> aux;
        std::vector<Summand> pats;
        std::vector<Derivation> prem{q};
        bool ok = true;
        for (const auto& br : brs) {
          const Summand* s = bound.find(br.pattern.ctor);
          TypeEnv gi = g;
          std::vector<Type> tys;
          for (std::size_t i = 0; i < br.pattern.vars.size(); ++i) {
            Type t = s && i < s->args.size() ? s->args[i] : Type::ok();
            tys.push_back(t);
            aux.push_back(t);
            gi = gi.bind(br.pattern.vars[i], t);
          }
          pats.push_back(Summand{br.pattern.ctor, tys});
          auto p = right(gi, br.body, a);
          if (!p) {
            ok = false;
            break;
          }
          prem.push_back(p);
        }
        if (ok && e(b, Type::sum(pats))) return node(Rule::MchR2, right_judgement(g, m, a), std::move(prem), aux);
      }
    }
    return nullptr;
  }

  Derivation left_uncached(const TypeEnv& g, const Term& m, const Type& a, const std::optional<Typing>& d) {
    auto j = left_judgement(g, m, a, d);
    if (d && e(Type::ok(), d->type)) return node(Rule::VarK2, j);
    switch (m.kind()) {
      case TermKind::Local:
        if (d && d->term.name() == m.name() && e(a, d->type)) return node(Rule::Var2, j);
        return nullptr;
      case TermKind::Top:
      case TermKind::Fix: return nullptr;
      case TermKind::App: {
        for (const auto& b2 : pool_) {
          auto q = left(g, m.arg(), b2, d);
          if (!q) continue;
          if (auto p = right(g, m.fn(), Type::nec(b2, a))) return node(Rule::AppL2, j, {p, q});
        }
        if (auto p = left(g, m.fn(), Type::nec(Type::ok(), a), d)) return node(Rule::FunK2, j, {p});
        return nullptr;
      }
      case TermKind::Abs: {
        Type s = ok_sum(std::nullopt);
        if (e(a, s)) return node(Rule::AbsDL2, j, {}, {s});
        return nullptr;
      }
      case TermKind::Ctor: return ctor_left(j, g, m, a, d);
      case TermKind::Match: return match_left(j, g, m, a, d);
    }
    return nullptr;
  }

  Derivation ctor_left(const Judgement& j, const TypeEnv& g, const Term& m, const Type& a,
                       const std::optional<Typing>& d) {
    const std::string& c = m.name();
    const std::size_t n = m.args().size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Type> cands;
      if (a.is_sum())
        if (const Summand* s = a.find(c); s && s->args.size() == n) cands.push_back(s->args[i]);
      for (const auto& t : pool_)
        if (std::find(cands.begin(), cands.end(), t) == cands.end()) cands.push_back(t);
      for (const auto& ai : cands) {
        Type s = detail::ctor_sum(sig_, std::nullopt, [&](const std::string& k, std::size_t pos) {
          return k == c && pos == i ? ai : Type::ok();
        });
        if (!e(a, s)) continue;
        if (auto p = left(g, m.args()[i], ai, d)) return node(Rule::CnsL2, j, {p}, {s}, i);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (auto p = left(g, m.args()[i], Type::ok(), d)) return node(Rule::CnsK2, j, {p}, {}, i);
    for (const auto& t : arrow_candidates(a, true))
      if (e(a, t)) return node(Rule::CnsDL21, j, {}, {t});
    for (const auto& t : arrow_candidates(a, false))
      if (e(a, t)) return node(Rule::CnsDL22, j, {}, {t});
    Type s = ok_sum(c);
    if (e(a, s)) return node(Rule::CnsDL23, j, {}, {s});
    return nullptr;
  }

  Derivation match_left(const Judgement& j, const TypeEnv& g, const Term& m, const Type& a,
                        const std::optional<Typing>& d) {
    std::vector<Branch> brs = detail::branches_apart(m, g, d);
    std::vector<Derivation> pair_prem;
    std::vector<Derivation> var_prem;
    std::vector<Type> aux;
    std::vector<Type> cands = pool_;
    if (std::find(cands.begin(), cands.end(), Type::ok()) == cands.end()) cands.push_back(Type::ok());
    for (const auto& br : brs) {
      // Per variable, the right-hand types under which the body is derivable.
      std::vector<std::vector<std::pair<Type, Derivation>>> options;
      for (const auto& x : br.pattern.vars) {
        std::vector<std::pair<Type, Derivation>> ok;
        for (const auto& bx : cands)
          if (auto p = left(g, br.body, a, Typing{Term::local(x), bx})) ok.emplace_back(bx, p);
        if (ok.empty()) return nullptr;
        options.push_back(std::move(ok));
      }
      std::vector<std::size_t> pick(options.size(), 0);
      Derivation found;
      std::vector<Derivation> found_vars;
      Type found_b;
      for (std::size_t tries = 0; tries < kInstantiationBudget; ++tries) {
        std::vector<Type> bx;
        std::vector<Derivation> vs;
        for (std::size_t i = 0; i < options.size(); ++i) {
          bx.push_back(options[i][pick[i]].first);
          vs.push_back(options[i][pick[i]].second);
        }
        Type bi = detail::pattern_type(br.pattern, bx);
        Type ai2 = Type::ctor(std::string(kPairCtor), {bi, a});
        if (auto p = left(g, pair_term(m.scrutinee(), br.body), ai2, d)) {
          found = p;
          found_vars = std::move(vs);
          found_b = bi;
          break;
        }
        std::size_t i = 0;
        while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == options.size()) break;
      }
      if (!found) return nullptr;
      pair_prem.push_back(found);
      var_prem.insert(var_prem.end(), found_vars.begin(), found_vars.end());
      aux.push_back(found_b);
      aux.push_back(a);
    }
    std::vector<Derivation> prem = pair_prem;
    prem.insert(prem.end(), var_prem.begin(), var_prem.end());
    return node(Rule::MchL2, j, std::move(prem), std::move(aux));
  }

  Entailment ent_;
  const SchemeEnv& schemes_;
  const Signature& sig_;
  std::vector<Type> pool_;
  std::unordered_map<std::string, Derivation> memo_;
};

std::vector<Type> candidate_pool(const Scheme& sch) {
  std::vector<Type> all;
  collect_subterms(sch.body, all);
  for (const auto& k : sch.constraints) {
    collect_subterms(k.lhs, all);
    collect_subterms(k.rhs, all);
  }
  all.push_back(Type::ok());
  std::vector<Type> out;
  for (const auto& t : all)
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

}  // namespace

SchemeVerdict check_definition(const SourceModule& src, const std::string& name, const Scheme& sch) {
  SchemeVerdict v;
  v.name = name;
  const Term* body = src.module.lookup(name);
  if (!body) {
    v.message = "no definition for " + name;
    return v;
  }
  Searcher search(sch.constraints, src.schemes, src.signature, candidate_pool(sch));
  Derivation d = search.right(TypeEnv{}, *body, sch.body);
  if (!d) {
    v.message = "no algorithmic derivation of " + name + " : " + print_scheme(sch) + " within the candidate types";
    return v;
  }
  ValidationReport r = validate_algorithmic(d, sch.constraints, src.schemes, src.signature);
  if (!r.ok) {
    v.message = "derivation found but rejected by the validator: " + r.message;
    return v;
  }
  v.accepted = true;
  v.derivation = d;
  return v;
}

ModuleCheckReport check_toplevel(const SourceModule& src) {
  ModuleCheckReport report;
  for (const auto& def : src.module.definitions()) {
    auto it = src.schemes.find(def.name);
    if (it == src.schemes.end() || it->second.empty()) {
      report.ok = false;
      report.verdicts.push_back({def.name, 0, false, "no declared scheme for " + def.name, nullptr});
      continue;
    }
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      SchemeVerdict v = check_definition(src, def.name, it->second[i]);
      v.scheme_index = i;
      report.ok = report.ok && v.accepted;
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace twoside
