// infer.cpp - InferR / InferL with instrumented algorithmic derivations
#include "twoside/infer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

#include "infer_internal.hpp"

namespace twoside {

Type FreshSupply::next() {
  for (;;) {
    std::string name = prefix_ + std::to_string(++counter_);
    if (!avoid_.count(name)) return Type::var(std::move(name));
  }
}

Instance instantiate_scheme(const Scheme& sch, const std::vector<Type>& args) {
  if (args.size() != sch.vars.size())
    throw std::invalid_argument("scheme expects " + std::to_string(sch.vars.size()) + " type arguments, got " +
                                std::to_string(args.size()));
  TypeSubst s;
  for (std::size_t i = 0; i < args.size(); ++i) s[sch.vars[i]] = args[i];
  return {apply_type_subst(sch.body, s), subst_constraints(sch.constraints, s)};
}

namespace detail {

Type ctor_sum(const Signature& sig, const std::optional<std::string>& exclude,
              const std::function<Type(const std::string&, std::size_t)>& arg) {
  std::vector<Summand> ss;
  for (const auto& [name, arity] : sig.entries()) {
    if (exclude && *exclude == name) continue;
    Summand s{name, {}};
    for (std::size_t i = 0; i < arity; ++i) s.args.push_back(arg(name, i));
    ss.push_back(std::move(s));
  }
  return Type::sum(std::move(ss));
}

bool is_ctor_sum(const Type& t, const Signature& sig, const std::optional<std::string>& exclude) {
  if (!t.is_sum()) return false;
  std::size_t expected = 0;
  for (const auto& [name, arity] : sig.entries()) {
    if (exclude && *exclude == name) continue;
    ++expected;
    const Summand* s = t.find(name);
    if (!s || s->args.size() != arity) return false;
  }
  return t.summands().size() == expected;
}

Type pattern_type(const Pattern& p, const std::vector<Type>& var_types) { return Type::ctor(p.ctor, var_types); }

std::vector<Branch> branches_apart(const Term& match, const TypeEnv& gamma, const std::optional<Typing>& delta) {
  std::set<std::string> taken;
  for (const auto& [name, ty] : gamma.to_map()) taken.insert(name);
  if (delta) taken.insert(delta->term.name());
  for (const auto& v : match.scrutinee().free_var_list()) taken.insert(v);
  std::vector<Branch> out;
  for (const auto& b : match.branches()) {
    Branch nb = b;
    std::set<std::string> avoid = taken;
    for (const auto& v : b.body.free_var_list()) avoid.insert(v);
    avoid.insert(b.pattern.vars.begin(), b.pattern.vars.end());
    std::map<std::string, Term> ren;
    for (auto& v : nb.pattern.vars) {
      if (!taken.count(v)) continue;
      std::string fresh = fresh_name(v, avoid);
      avoid.insert(fresh);
      ren.emplace(v, Term::local(fresh));
      v = fresh;
    }
    if (!ren.empty()) nb.body = substitute(b.body, ren);
    out.push_back(std::move(nb));
  }
  return out;
}

}  // namespace detail

namespace {

using detail::left_judgement;
using detail::right_judgement;

// Constraint sets shared between alternatives as a DAG of fragments.
struct CNode;
using CList = std::shared_ptr<const CNode>;
struct CNode {
  std::vector<Constraint> own;
  std::vector<CList> parts;
};

CList make_clist(std::vector<Constraint> own, std::vector<CList> parts = {}) {
  return std::make_shared<const CNode>(CNode{std::move(own), std::move(parts)});
}

ConstraintSet flatten(const CList& root) {
  ConstraintSet out;
  std::unordered_set<const CNode*> seen;
  std::vector<const CNode*> stack{root.get()};
  while (!stack.empty()) {
    const CNode* n = stack.back();
    stack.pop_back();
    if (!n || !seen.insert(n).second) continue;
    for (const auto& k : n->own) out.add(k);
    for (const auto& p : n->parts) stack.push_back(p.get());
  }
  return out;
}

struct Partial {
  Type type;
  CList cons;
  Derivation deriv;
};

using Partials = std::vector<Partial>;

Derivation node(Rule r, Judgement j, std::vector<Derivation> premises = {}, std::vector<Type> aux = {},
                std::size_t index = 0) {
  return std::make_shared<const AlgNode>(AlgNode{r, std::move(j), std::move(premises), std::move(aux), index});
}

std::optional<Typing> delta_typing(const std::optional<std::pair<std::string, Type>>& delta) {
  if (!delta) return std::nullopt;
  return Typing{Term::local(delta->first), delta->second};
}

class Inferrer {
 public:
  Inferrer(const SchemeEnv& schemes, const Signature& sig, FreshSupply& fresh, std::size_t cap)
      : schemes_(schemes), sig_(sig), fresh_(fresh), cap_(cap) {}

  [[nodiscard]] bool truncated() const { return truncated_; }

  Partials right(const TypeEnv& g, const Term& m) {
    switch (m.kind()) {
      case TermKind::Local: return right_local(g, m);
      case TermKind::Top: return right_top(g, m);
      case TermKind::App: return right_app(g, m);
      case TermKind::Abs: return right_abs(g, m);
      case TermKind::Ctor: return right_ctor(g, m);
      case TermKind::Match: return right_match(g, m);
      case TermKind::Fix: return right_fix(g, m);
    }
    return {};
  }

  Partials left(const TypeEnv& g, const Term& m, const std::optional<Typing>& d) {
    Partials out;
    if (d && m.kind() != TermKind::Top) {
      Type a = fresh_.next();
      out.push_back({a, make_clist({{Type::ok(), d->type}}), node(Rule::VarK2, left_judgement(g, m, a, d))});
    }
    switch (m.kind()) {
      case TermKind::Local: left_local(g, m, d, out); break;
      case TermKind::Top: break;
      case TermKind::App: left_app(g, m, d, out); break;
      case TermKind::Abs: left_abs(g, m, d, out); break;
      case TermKind::Ctor: left_ctor(g, m, d, out); break;
      case TermKind::Match: left_match(g, m, d, out); break;
      case TermKind::Fix: break;
    }
    return out;
  }

 private:
  // Calls f on each combination drawn one per list, up to the cap.
  void product(const std::vector<const Partials*>& lists, const std::function<void(const std::vector<const Partial*>&)>& f,
               std::size_t& produced) {
    for (const auto* l : lists)
      if (l->empty()) return;
    std::vector<std::size_t> idx(lists.size(), 0);
    std::vector<const Partial*> pick(lists.size());
    for (;;) {
      if (produced >= cap_) {
        truncated_ = true;
        return;
      }
      for (std::size_t i = 0; i < lists.size(); ++i) pick[i] = &(*lists[i])[idx[i]];
      f(pick);
      ++produced;
      std::size_t i = 0;
      while (i < lists.size() && ++idx[i] == lists[i]->size()) idx[i++] = 0;
      if (i == lists.size()) return;
    }
  }

  void push_capped(Partials& out, Partial p) {
    if (out.size() >= cap_) {
      truncated_ = true;
      return;
    }
    out.push_back(std::move(p));
  }

  Partials right_local(const TypeEnv& g, const Term& m) {
    Type b = fresh_.next();
    const Type* t = g.lookup(m.name());
    Type a = t ? *t : Type::ok();
    return {{b, make_clist({{a, b}}), node(t ? Rule::Var2 : Rule::VarK2, right_judgement(g, m, b))}};
  }

  Partials right_top(const TypeEnv& g, const Term& m) {
    Partials out;
    auto it = schemes_.find(m.name());
    if (it == schemes_.end()) return out;
    for (std::size_t idx = 0; idx < it->second.size(); ++idx) {
      const Scheme& sch = it->second[idx];
      std::vector<Type> bs;
      for (std::size_t i = 0; i < sch.vars.size(); ++i) bs.push_back(fresh_.next());
      Type a = fresh_.next();
      Instance inst = instantiate_scheme(sch, bs);
      std::vector<Constraint> own(inst.obligations.begin(), inst.obligations.end());
      own.push_back({inst.type, a});
      out.push_back({a, make_clist(std::move(own)), node(Rule::Inst2, right_judgement(g, m, a), {}, bs, idx)});
    }
    return out;
  }

  Partials right_app(const TypeEnv& g, const Term& m) {
    Partials ps = right(g, m.fn());
    Partials qs = right(g, m.arg());
    Type a = fresh_.next();
    Partials out;
    std::size_t produced = 0;
    product({&ps, &qs}, [&](const std::vector<const Partial*>& pick) {
      const Partial& p = *pick[0];
      const Partial& q = *pick[1];
      out.push_back({a, make_clist({{p.type, Type::to(q.type, a)}}, {p.cons, q.cons}),
                     node(Rule::AppR2, right_judgement(g, m, a), {p.deriv, q.deriv})});
    }, produced);
    return out;
  }

  Partials right_abs(const TypeEnv& g, const Term& m) {
    Partials out;
    const std::string& x = m.name();
    {
      Type t = fresh_.next();
      Partials bodies = right(g.bind(x, t), m.body());
      Type a = fresh_.next();
      for (const auto& b : bodies)
        push_capped(out, {a, make_clist({{Type::to(t, b.type), a}}, {b.cons}),
                          node(Rule::AbsR2, right_judgement(g, m, a), {b.deriv}, {t, b.type})});
    }
    {
      Type t = fresh_.next();
      Partials bodies = left(g.erase(x), m.body(), Typing{Term::local(x), t});
      Type a = fresh_.next();
      for (const auto& b : bodies)
        push_capped(out, {a, make_clist({{Type::nec(t, b.type), a}}, {b.cons}),
                          node(Rule::AbnR2, right_judgement(g, m, a), {b.deriv}, {b.type, t})});
    }
    return out;
  }

  Partials right_ctor(const TypeEnv& g, const Term& m) {
    std::vector<Partials> args;
    for (const auto& arg : m.args()) args.push_back(right(g, arg));
    Type a = fresh_.next();
    Partials out;
    if (args.empty()) {
      out.push_back({a, make_clist({{Type::ctor(m.name(), {}), a}}), node(Rule::CnsR2, right_judgement(g, m, a))});
      return out;
    }
    std::vector<const Partials*> lists;
    for (const auto& l : args) lists.push_back(&l);
    std::size_t produced = 0;
    product(lists, [&](const std::vector<const Partial*>& pick) {
      std::vector<Type> tys;
      std::vector<CList> parts;
      std::vector<Derivation> prem;
      for (const Partial* p : pick) {
        tys.push_back(p->type);
        parts.push_back(p->cons);
        prem.push_back(p->deriv);
      }
      out.push_back({a, make_clist({{Type::ctor(m.name(), tys), a}}, std::move(parts)),
                     node(Rule::CnsR2, right_judgement(g, m, a), std::move(prem))});
    }, produced);
    return out;
  }

  Partials right_match(const TypeEnv& g, const Term& m) {
    Partials scrut = right(g, m.scrutinee());
    std::vector<Type> bx;
    std::vector<Summand> pats;
    std::vector<Partials> bodies;
    for (const auto& br : m.branches()) {
      TypeEnv gi = g;
      std::vector<Type> tys;
      for (const auto& v : br.pattern.vars) {
        Type t = fresh_.next();
        tys.push_back(t);
        bx.push_back(t);
        gi = gi.bind(v, t);
      }
      pats.push_back(Summand{br.pattern.ctor, tys});
      bodies.push_back(right(gi, br.body));
    }
    Type sum = Type::sum(std::move(pats));
    Type a = fresh_.next();
    std::vector<const Partials*> lists{&scrut};
    for (const auto& l : bodies) lists.push_back(&l);
    Partials out;
    std::size_t produced = 0;
    product(lists, [&](const std::vector<const Partial*>& pick) {
      std::vector<Constraint> own{{pick[0]->type, sum}};
      std::vector<CList> parts{pick[0]->cons};
      std::vector<Derivation> prem{pick[0]->deriv};
      for (std::size_t i = 1; i < pick.size(); ++i) {
        own.push_back({pick[i]->type, a});
        parts.push_back(pick[i]->cons);
        prem.push_back(pick[i]->deriv);
      }
      out.push_back({a, make_clist(std::move(own), std::move(parts)),
                     node(Rule::MchR2, right_judgement(g, m, a), std::move(prem), bx)});
    }, produced);
    return out;
  }

  Partials right_fix(const TypeEnv& g, const Term& m) {
    Type a = fresh_.next();
    Partials bodies = right(g.bind(m.name(), a), m.body());
    Partials out;
    for (const auto& b : bodies)
      push_capped(out, {a, make_clist({{b.type, a}}, {b.cons}), node(Rule::FixR2, right_judgement(g, m, a), {b.deriv})});
    return out;
  }

  void left_local(const TypeEnv& g, const Term& m, const std::optional<Typing>& d, Partials& out) {
    if (!d || d->term.name() != m.name()) return;
    Type a = fresh_.next();
    out.push_back({a, make_clist({{a, d->type}}), node(Rule::Var2, left_judgement(g, m, a, d))});
  }

  void left_app(const TypeEnv& g, const Term& m, const std::optional<Typing>& d, Partials& out) {
    {
      Partials ps = right(g, m.fn());
      Partials qs = left(g, m.arg(), d);
      Type a = fresh_.next();
      std::size_t produced = 0;
      product({&ps, &qs}, [&](const std::vector<const Partial*>& pick) {
        const Partial& p = *pick[0];
        const Partial& q = *pick[1];
        push_capped(out, {a, make_clist({{p.type, Type::nec(q.type, a)}}, {p.cons, q.cons}),
                          node(Rule::AppL2, left_judgement(g, m, a, d), {p.deriv, q.deriv})});
      }, produced);
    }
    {
      Partials ps = left(g, m.fn(), d);
      Type a = fresh_.next();
      for (const auto& p : ps)
        push_capped(out, {a, make_clist({{Type::nec(Type::ok(), a), p.type}}, {p.cons}),
                          node(Rule::FunK2, left_judgement(g, m, a, d), {p.deriv})});
    }
  }

  Type fresh_sum(const std::optional<std::string>& exclude) {
    return detail::ctor_sum(sig_, exclude, [&](const std::string&, std::size_t) { return fresh_.next(); });
  }

  void left_abs(const TypeEnv& g, const Term& m, const std::optional<Typing>& d, Partials& out) {
    Type a = fresh_.next();
    Type s = fresh_sum(std::nullopt);
    out.push_back({a, make_clist({{a, s}}), node(Rule::AbsDL2, left_judgement(g, m, a, d), {}, {s})});
  }

  void left_ctor(const TypeEnv& g, const Term& m, const std::optional<Typing>& d, Partials& out) {
    const std::string& k = m.name();
    const std::size_t n = m.args().size();
    for (std::size_t i = 0; i < n; ++i) {
      Partials subs = left(g, m.args()[i], d);
      Type a = fresh_.next();
      std::vector<Type> own_args;
      for (std::size_t j = 0; j < n; ++j) own_args.push_back(fresh_.next());
      Type others = fresh_sum(k);
      for (const auto& sub : subs) {
        std::vector<Summand> ss = others.summands();
        std::vector<Type> args = own_args;
        args[i] = sub.type;
        ss.push_back(Summand{k, std::move(args)});
        Type s = Type::sum(std::move(ss));
        push_capped(out, {a, make_clist({{a, s}}, {sub.cons}),
                          node(Rule::CnsL2, left_judgement(g, m, a, d), {sub.deriv}, {s}, i)});
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Partials subs = left(g, m.args()[i], d);
      Type a = fresh_.next();
      for (const auto& sub : subs)
        push_capped(out, {a, make_clist({{Type::ok(), sub.type}}, {sub.cons}),
                          node(Rule::CnsK2, left_judgement(g, m, a, d), {sub.deriv}, {}, i)});
    }
    {
      Type a = fresh_.next();
      Type t = Type::to(fresh_.next(), fresh_.next());
      out.push_back({a, make_clist({{a, t}}), node(Rule::CnsDL21, left_judgement(g, m, a, d), {}, {t})});
    }
    {
      Type a = fresh_.next();
      Type t = Type::nec(fresh_.next(), fresh_.next());
      out.push_back({a, make_clist({{a, t}}), node(Rule::CnsDL22, left_judgement(g, m, a, d), {}, {t})});
    }
    {
      Type a = fresh_.next();
      Type s = fresh_sum(k);
      out.push_back({a, make_clist({{a, s}}), node(Rule::CnsDL23, left_judgement(g, m, a, d), {}, {s})});
    }
  }

  void left_match(const TypeEnv& g, const Term& m, const std::optional<Typing>& d, Partials& out) {
    std::vector<Branch> brs = detail::branches_apart(m, g, d);
    const std::size_t k = brs.size();
    Type a = fresh_.next();
    std::vector<Type> ai;
    std::vector<Type> bi;
    for (std::size_t i = 0; i < k; ++i) {
      ai.push_back(fresh_.next());
      bi.push_back(fresh_.next());
    }
    std::vector<Partials> pairs;
    for (const auto& br : brs) pairs.push_back(left(g, pair_term(m.scrutinee(), br.body), d));
    // (i, x) premises in branch then pattern order.
    std::vector<Partials> vars;
    std::vector<std::size_t> var_branch;
    std::vector<std::vector<Type>> bx(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& x : brs[i].pattern.vars) {
        Type b = fresh_.next();
        bx[i].push_back(b);
        vars.push_back(left(g, brs[i].body, Typing{Term::local(x), b}));
        var_branch.push_back(i);
      }
    }
    std::vector<Constraint> fixed;
    std::vector<Type> aux;
    for (std::size_t i = 0; i < k; ++i) {
      fixed.push_back({a, ai[i]});
      fixed.push_back({detail::pattern_type(brs[i].pattern, bx[i]), bi[i]});
      aux.push_back(bi[i]);
      aux.push_back(ai[i]);
    }
    std::vector<const Partials*> lists;
    for (const auto& l : pairs) lists.push_back(&l);
    for (const auto& l : vars) lists.push_back(&l);
    std::size_t produced = 0;
    product(lists, [&](const std::vector<const Partial*>& pick) {
      std::vector<Constraint> own = fixed;
      std::vector<CList> parts;
      std::vector<Derivation> prem;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        const Partial& p = *pick[i];
        if (i < k)
          own.push_back({Type::ctor(std::string(kPairCtor), {bi[i], ai[i]}), p.type});
        else
          own.push_back({a, p.type});
        parts.push_back(p.cons);
        prem.push_back(p.deriv);
      }
      push_capped(out, {a, make_clist(std::move(own), std::move(parts)),
                        node(Rule::MchL2, left_judgement(g, m, a, d), std::move(prem), aux)});
    }, produced);
  }

  const SchemeEnv& schemes_;
  const Signature& sig_;
  FreshSupply& fresh_;
  std::size_t cap_;
  bool truncated_ = false;
};

std::set<std::string> env_type_vars(const TypeEnv& g) {
  std::set<std::string> out;
  for (const auto& [name, ty] : g.to_map()) collect_type_vars(ty, out);
  return out;
}

InferResult finish(Partials ps, bool truncated) {
  InferResult r;
  r.truncated = truncated;
  for (auto& p : ps) r.judgements.push_back({flatten(p.cons), p.deriv->judgement, p.deriv});
  return r;
}

}  // namespace

InferResult infer_right(const TypeEnv& gamma, const Term& m, const SchemeEnv& schemes, const Signature& sig,
                        const InferOptions& opts) {
  FreshSupply fresh(opts.prefix, env_type_vars(gamma));
  Inferrer inf(schemes, sig, fresh, opts.product_cap);
  Partials ps = inf.right(gamma, m);
  return finish(std::move(ps), inf.truncated());
}

InferResult infer_left(const TypeEnv& gamma, const Term& m, const std::optional<std::pair<std::string, Type>>& delta,
                       const SchemeEnv& schemes, const Signature& sig, const InferOptions& opts) {
  std::set<std::string> avoid = env_type_vars(gamma);
  if (delta) collect_type_vars(delta->second, avoid);
  FreshSupply fresh(opts.prefix, std::move(avoid));
  Inferrer inf(schemes, sig, fresh, opts.product_cap);
  Partials ps = inf.left(gamma, m, delta_typing(delta));
  return finish(std::move(ps), inf.truncated());
}

namespace {

bool match_types(const Type& a, const Type& b, std::map<std::string, std::string>& fwd,
                 std::map<std::string, std::string>& bwd, const std::set<std::string>& fixed) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Ok: return true;
    case TypeKind::Var: {
      if (fixed.count(a.name()) || fixed.count(b.name())) return a.name() == b.name();
      auto f = fwd.find(a.name());
      auto r = bwd.find(b.name());
      if (f == fwd.end() && r == bwd.end()) {
        fwd.emplace(a.name(), b.name());
        bwd.emplace(b.name(), a.name());
        return true;
      }
      return f != fwd.end() && f->second == b.name() && r != bwd.end() && r->second == a.name();
    }
    case TypeKind::To:
    case TypeKind::Nec:
      return match_types(a.dom(), b.dom(), fwd, bwd, fixed) && match_types(a.cod(), b.cod(), fwd, bwd, fixed);
    case TypeKind::Sum: {
      if (a.summands().size() != b.summands().size()) return false;
      for (std::size_t i = 0; i < a.summands().size(); ++i) {
        const auto& s = a.summands()[i];
        const auto& t = b.summands()[i];
        if (s.ctor != t.ctor || s.args.size() != t.args.size()) return false;
        for (std::size_t j = 0; j < s.args.size(); ++j)
          if (!match_types(s.args[j], t.args[j], fwd, bwd, fixed)) return false;
      }
      return true;
    }
  }
  return false;
}

// Shape with variables erased; a necessary condition for renaming.
std::string shape(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Ok: return "O";
    case TypeKind::Var: return "_";
    case TypeKind::To: return "(" + shape(t.dom()) + ">" + shape(t.cod()) + ")";
    case TypeKind::Nec: return "(" + shape(t.dom()) + "~" + shape(t.cod()) + ")";
    case TypeKind::Sum: {
      std::string out = "[";
      for (const auto& s : t.summands()) {
        out += s.ctor + "(";
        for (const auto& a : s.args) out += shape(a) + ",";
        out += ")";
      }
      return out + "]";
    }
  }
  return "";
}

bool assign(std::size_t i, const std::vector<Constraint>& xs, const std::vector<Constraint>& ys,
            std::vector<bool>& used, std::map<std::string, std::string>& fwd, std::map<std::string, std::string>& bwd,
            const std::set<std::string>& fixed) {
  if (i == xs.size()) return true;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (used[j]) continue;
    auto f = fwd;
    auto b = bwd;
    if (!match_types(xs[i].lhs, ys[j].lhs, f, b, fixed) || !match_types(xs[i].rhs, ys[j].rhs, f, b, fixed)) continue;
    used[j] = true;
    if (assign(i + 1, xs, ys, used, f, b, fixed)) {
      fwd = std::move(f);
      bwd = std::move(b);
      return true;
    }
    used[j] = false;
  }
  return false;
}

}  // namespace

bool equivalent_up_to_renaming(const ConstraintSet& c1, const Type& t1, const ConstraintSet& c2, const Type& t2,
                               const std::set<std::string>& fixed) {
  if (c1.size() != c2.size()) return false;
  std::vector<Constraint> xs(c1.begin(), c1.end());
  std::vector<Constraint> ys(c2.begin(), c2.end());
  auto key = [](const Constraint& k) { return shape(k.lhs) + "<=" + shape(k.rhs); };
  std::vector<std::string> kx;
  std::vector<std::string> ky;
  for (const auto& k : xs) kx.push_back(key(k));
  for (const auto& k : ys) ky.push_back(key(k));
  std::sort(kx.begin(), kx.end());
  std::sort(ky.begin(), ky.end());
  if (kx != ky) return false;
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;
  if (!match_types(t1, t2, fwd, bwd, fixed)) return false;
  // Most constrained constraints first keeps the backtracking shallow.
  std::stable_sort(xs.begin(), xs.end(), [](const Constraint& a, const Constraint& b) {
    return a.lhs.size() + a.rhs.size() > b.lhs.size() + b.rhs.size();
  });
  std::vector<bool> used(ys.size(), false);
  return assign(0, xs, ys, used, fwd, bwd, fixed);
}

}  // namespace twoside
