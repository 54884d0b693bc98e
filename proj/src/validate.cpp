// validate.cpp - independent re-check of algorithmic derivations
#include <sstream>

#include "infer_internal.hpp"
#include "twoside/constraints.hpp"
#include "twoside/infer.hpp"

namespace twoside {

namespace {

using detail::left_judgement;
using detail::right_judgement;

bool same_typing(const std::optional<Typing>& a, const std::optional<Typing>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->type == b->type && alpha_eq(a->term, b->term));
}

bool same_judgement(const Judgement& a, const Judgement& b) {
  return same_typing(a.left, b.left) && same_typing(a.right, b.right) && a.gamma == b.gamma;
}

struct Failure {
  Rule rule;
  std::string message;
};

class Validator {
 public:
  Validator(const ConstraintSet& c, const SchemeEnv& schemes, const Signature& sig)
      : ent_(c), schemes_(schemes), sig_(sig) {}

  [[nodiscard]] const std::optional<Failure>& failure() const { return failure_; }

  bool check(const AlgNode& n, const Judgement& expected) {
    if (!same_judgement(n.judgement, expected))
      return fail(n, "conclusion is `" + print_judgement(n.judgement) + "` but the parent requires `" +
                         print_judgement(expected) + "`");
    return check_rule(n);
  }

 private:
  bool fail(const AlgNode& n, const std::string& why) {
    if (!failure_) failure_ = Failure{n.rule, std::string(to_string(n.rule)) + " at `" + print_judgement(n.judgement) + "`: " + why};
    return false;
  }

  bool side(const AlgNode& n, const Type& lhs, const Type& rhs) {
    if (ent_(lhs, rhs)) return true;
    return fail(n, "side condition " + print_constraint({lhs, rhs}) + " is not entailed");
  }

  bool premises(const AlgNode& n, std::size_t count) {
    if (n.premises.size() == count) return true;
    return fail(n, "expects " + std::to_string(count) + " premises, has " + std::to_string(n.premises.size()));
  }

  bool aux(const AlgNode& n, std::size_t count) {
    if (n.aux.size() == count) return true;
    return fail(n, "expects " + std::to_string(count) + " auxiliary types, has " + std::to_string(n.aux.size()));
  }

  bool sub(const AlgNode& n, std::size_t i, const Judgement& expected) {
    if (!n.premises[i]) return fail(n, "missing premise");
    return check(*n.premises[i], expected);
  }

  // Premise judgement fields used to read types the rule leaves implicit.
  static const Type* right_type(const AlgNode& n, std::size_t i) {
    const auto& j = n.premises[i]->judgement;
    return j.right && !j.left ? &j.right->type : nullptr;
  }
  static const Type* left_type(const AlgNode& n, std::size_t i) {
    const auto& j = n.premises[i]->judgement;
    return j.left ? &j.left->type : nullptr;
  }

  bool need_mode(const AlgNode& n, bool left) {
    const Judgement& j = n.judgement;
    if (left && !j.left) return fail(n, "requires a left-mode judgement");
    if (!left && (j.left || !j.right)) return fail(n, "requires a right-mode judgement");
    return true;
  }

  bool need_kind(const AlgNode& n, TermKind k) {
    if (n.judgement.subject().kind() == k) return true;
    return fail(n, "subject `" + print_term(n.judgement.subject()) + "` has the wrong form for this rule");
  }

  bool check_rule(const AlgNode& n) {
    const Judgement& j = n.judgement;
    const TypeEnv& g = j.gamma;
    switch (n.rule) {
      case Rule::Var2: {
        if (!premises(n, 0)) return false;
        if (!j.right || j.right->term.kind() != TermKind::Local) return fail(n, "right-hand side is not a variable");
        const std::string& x = j.right->term.name();
        if (j.left) {
          if (j.left->term.kind() != TermKind::Local || j.left->term.name() != x)
            return fail(n, "left subject is not the right-hand variable");
          return side(n, j.left->type, j.right->type);
        }
        const Type* a = g.lookup(x);
        if (!a) return fail(n, "variable " + x + " is not in the environment");
        return side(n, *a, j.right->type);
      }
      case Rule::VarK2: {
        if (!premises(n, 0)) return false;
        if (!j.right || j.right->term.kind() != TermKind::Local) return fail(n, "right-hand side is not a variable");
        return side(n, Type::ok(), j.right->type);
      }
      case Rule::Inst2: {
        if (!need_mode(n, false) || !need_kind(n, TermKind::Top) || !premises(n, 0)) return false;
        auto it = schemes_.find(j.right->term.name());
        if (it == schemes_.end() || n.index >= it->second.size())
          return fail(n, "no scheme " + std::to_string(n.index) + " for " + j.right->term.name());
        const Scheme& sch = it->second[n.index];
        if (!aux(n, sch.vars.size())) return false;
        Instance inst = instantiate_scheme(sch, n.aux);
        for (const auto& k : inst.obligations)
          if (!side(n, k.lhs, k.rhs)) return false;
        return side(n, inst.type, j.right->type);
      }
      case Rule::AbsR2: {
        if (!need_mode(n, false) || !need_kind(n, TermKind::Abs) || !premises(n, 1) || !aux(n, 2)) return false;
        const Term& m = j.right->term;
        return side(n, Type::to(n.aux[0], n.aux[1]), j.right->type) &&
               sub(n, 0, right_judgement(g.bind(m.name(), n.aux[0]), m.body(), n.aux[1]));
      }
      case Rule::AbnR2: {
        if (!need_mode(n, false) || !need_kind(n, TermKind::Abs) || !premises(n, 1) || !aux(n, 2)) return false;
        const Term& m = j.right->term;
        return side(n, Type::nec(n.aux[1], n.aux[0]), j.right->type) &&
               sub(n, 0, left_judgement(g.erase(m.name()), m.body(), n.aux[0], Typing{Term::local(m.name()), n.aux[1]}));
      }
      case Rule::AppR2: {
        if (!need_mode(n, false) || !need_kind(n, TermKind::App) || !premises(n, 2)) return false;
        const Type* b1 = right_type(n, 0);
        const Type* b2 = right_type(n, 1);
        if (!b1 || !b2) return fail(n, "premises must be right-mode");
        const Term& m = j.right->term;
        return side(n, *b1, Type::to(*b2, j.right->type)) && sub(n, 0, right_judgement(g, m.fn(), *b1)) &&
               sub(n, 1, right_judgement(g, m.arg(), *b2));
      }
      case Rule::AppL2: {
        if (!need_mode(n, true) || !need_kind(n, TermKind::App) || !premises(n, 2)) return false;
        const Type* b1 = right_type(n, 0);
        const Type* b2 = left_type(n, 1);
        if (!b1 || !b2) return fail(n, "premise modes do not match the rule");
        const Term& m = j.left->term;
        return side(n, *b1, Type::nec(*b2, j.left->type)) && sub(n, 0, right_judgement(g, m.fn(), *b1)) &&
               sub(n, 1, left_judgement(g, m.arg(), *b2, j.right));
      }
      case Rule::FunK2: {
        if (!need_mode(n, true) || !need_kind(n, TermKind::App) || !premises(n, 1)) return false;
        const Type* b = left_type(n, 0);
        if (!b) return fail(n, "premise must be left-mode");
        return side(n, Type::nec(Type::ok(), j.left->type), *b) &&
               sub(n, 0, left_judgement(g, j.left->term.fn(), *b, j.right));
      }
      case Rule::CnsR2: {
        if (!need_mode(n, false) || !need_kind(n, TermKind::Ctor)) return false;
        const Term& m = j.right->term;
        if (!premises(n, m.args().size())) return false;
        std::vector<Type> tys;
        for (std::size_t i = 0; i < m.args().size(); ++i) {
          const Type* t = right_type(n, i);
          if (!t) return fail(n, "premises must be right-mode");
          tys.push_back(*t);
        }
        if (!side(n, Type::ctor(m.name(), tys), j.right->type)) return false;
        for (std::size_t i = 0; i < tys.size(); ++i)
          if (!sub(n, i, right_judgement(g, m.args()[i], tys[i]))) return false;
        return true;
      }
      case Rule::CnsL2: {
        if (!need_mode(n, true) || !need_kind(n, TermKind::Ctor) || !premises(n, 1) || !aux(n, 1)) return false;
        const Term& m = j.left->term;
        const Type& s = n.aux[0];
        if (n.index >= m.args().size()) return fail(n, "argument index out of range");
        if (!detail::is_ctor_sum(s, sig_, std::nullopt))
          return fail(n, "bound " + print_type(s) + " is not a sum over every constructor");
        const Type& ai = s.find(m.name())->args[n.index];
        return side(n, j.left->type, s) && sub(n, 0, left_judgement(g, m.args()[n.index], ai, j.right));
      }
      case Rule::CnsK2: {
        if (!need_mode(n, true) || !need_kind(n, TermKind::Ctor) || !premises(n, 1)) return false;
        const Term& m = j.left->term;
        if (n.index >= m.args().size()) return fail(n, "argument index out of range");
        const Type* b = left_type(n, 0);
        if (!b) return fail(n, "premise must be left-mode");
        return side(n, Type::ok(), *b) && sub(n, 0, left_judgement(g, m.args()[n.index], *b, j.right));
      }
      case Rule::CnsDL21:
      case Rule::CnsDL22:
      case Rule::CnsDL23: {
        if (!need_mode(n, true) || !need_kind(n, TermKind::Ctor) || !premises(n, 0) || !aux(n, 1)) return false;
        const Type& t = n.aux[0];
        bool shape_ok = n.rule == Rule::CnsDL21   ? t.is_to()
                        : n.rule == Rule::CnsDL22 ? t.is_nec()
                                                  : detail::is_ctor_sum(t, sig_, j.left->term.name());
        if (!shape_ok) return fail(n, "bound " + print_type(t) + " has the wrong shape");
        return side(n, j.left->type, t);
      }
      case Rule::AbsDL2: {
        if (!need_mode(n, true) || !need_kind(n, TermKind::Abs) || !premises(n, 0) || !aux(n, 1)) return false;
        if (!detail::is_ctor_sum(n.aux[0], sig_, std::nullopt))
          return fail(n, "bound " + print_type(n.aux[0]) + " is not a sum over every constructor");
        return side(n, j.left->type, n.aux[0]);
      }
      case Rule::MchR2: return check_match_right(n);
      case Rule::MchL2: return check_match_left(n);
      case Rule::FixR2: {
        if (!need_mode(n, false) || !need_kind(n, TermKind::Fix) || !premises(n, 1)) return false;
        const Type* b = right_type(n, 0);
        if (!b) return fail(n, "premise must be right-mode");
        const Term& m = j.right->term;
        return side(n, *b, j.right->type) && sub(n, 0, right_judgement(g.bind(m.name(), j.right->type), m.body(), *b));
      }
    }
    return fail(n, "unknown rule");
  }

  bool check_match_right(const AlgNode& n) {
    const Judgement& j = n.judgement;
    if (!need_mode(n, false) || !need_kind(n, TermKind::Match)) return false;
    const Term& m = j.right->term;
    const auto& brs = m.branches();
    std::size_t nvars = 0;
    for (const auto& b : brs) nvars += b.pattern.vars.size();
    if (!premises(n, 1 + brs.size()) || !aux(n, nvars)) return false;
    const Type* b = right_type(n, 0);
    if (!b) return fail(n, "premises must be right-mode");
    std::vector<Summand> pats;
    std::vector<TypeEnv> envs;
    std::size_t next = 0;
    for (const auto& br : brs) {
      TypeEnv gi = j.gamma;
      std::vector<Type> tys;
      for (const auto& v : br.pattern.vars) {
        tys.push_back(n.aux[next]);
        gi = gi.bind(v, n.aux[next]);
        ++next;
      }
      pats.push_back(Summand{br.pattern.ctor, tys});
      envs.push_back(gi);
    }
    if (!side(n, *b, Type::sum(pats))) return false;
    if (!sub(n, 0, right_judgement(j.gamma, m.scrutinee(), *b))) return false;
    for (std::size_t i = 0; i < brs.size(); ++i) {
      const Type* ai = right_type(n, i + 1);
      if (!ai) return fail(n, "premises must be right-mode");
      if (!side(n, *ai, j.right->type) || !sub(n, i + 1, right_judgement(envs[i], brs[i].body, *ai))) return false;
    }
    return true;
  }

  bool check_match_left(const AlgNode& n) {
    const Judgement& j = n.judgement;
    if (!need_mode(n, true) || !need_kind(n, TermKind::Match)) return false;
    const Term& m = j.left->term;
    std::vector<Branch> brs = detail::branches_apart(m, j.gamma, j.right);
    const std::size_t k = brs.size();
    std::size_t nvars = 0;
    for (const auto& b : brs) nvars += b.pattern.vars.size();
    if (!premises(n, k + nvars) || !aux(n, 2 * k)) return false;
    const Type& a = j.left->type;
    std::size_t next = k;
    for (std::size_t i = 0; i < k; ++i) {
      const Type& bi = n.aux[2 * i];
      const Type& ai = n.aux[2 * i + 1];
      const Type* ai2 = left_type(n, i);
      if (!ai2) return fail(n, "premises must be left-mode");
      if (!side(n, a, ai) || !side(n, Type::ctor(std::string(kPairCtor), {bi, ai}), *ai2)) return false;
      if (!sub(n, i, left_judgement(j.gamma, pair_term(m.scrutinee(), brs[i].body), *ai2, j.right))) return false;
      std::vector<Type> bx;
      for (const auto& x : brs[i].pattern.vars) {
        const auto& pj = n.premises[next]->judgement;
        if (!pj.left || !pj.right) return fail(n, "variable premises must be left-mode with a right-hand variable");
        const Type& ax = pj.left->type;
        const Type& bxi = pj.right->type;
        if (!side(n, a, ax)) return false;
        if (!sub(n, next, left_judgement(j.gamma, brs[i].body, ax, Typing{Term::local(x), bxi}))) return false;
        bx.push_back(bxi);
        ++next;
      }
      if (!side(n, detail::pattern_type(brs[i].pattern, bx), bi)) return false;
    }
    return true;
  }

  Entailment ent_;
  const SchemeEnv& schemes_;
  const Signature& sig_;
  std::optional<Failure> failure_;
};

}  // namespace

ValidationReport validate_algorithmic(const Derivation& d, const ConstraintSet& c, const SchemeEnv& schemes,
                                      const Signature& sig) {
  ValidationReport r;
  if (!d) {
    r.ok = false;
    r.message = "empty derivation";
    return r;
  }
  Validator v(c, schemes, sig);
  if (v.check(*d, d->judgement)) return r;
  r.ok = false;
  r.failing_rule = v.failure()->rule;
  r.message = v.failure()->message;
  return r;
}

}  // namespace twoside
