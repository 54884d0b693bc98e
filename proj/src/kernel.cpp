// kernel.cpp - rule schemas and the derivation checker for both systems
#include "twoside/kernel.hpp"

#include <functional>

#include "kernel_internal.hpp"

namespace twoside::kernel {

using pcf::PcfTermKind;
using pcf::PcfTypeKind;

namespace detail {

std::string formula_key(const Formula& f) { return pcf::alpha_key(f.term) + " : " + pcf::print_pcf_type(f.type); }

bool FormulaSet::mentions(const std::string& x) const {
  for (const auto& [k, f] : items_)
    if (f.term.kind() == PcfTermKind::Var && f.term.name() == x) return true;
  return false;
}

bool FormulaSet::has_free(const std::string& x) const {
  for (const auto& [k, f] : items_)
    if (f.term.free_vars().count(x)) return true;
  return false;
}

std::string FormulaSet::key() const {
  std::string out;
  for (const auto& [k, f] : items_) out += k + "; ";
  return out;
}

std::string print_side(const FormulaSet& s) {
  std::string out;
  for (const auto& [k, f] : s.items()) out += (out.empty() ? "" : ", ") + print_formula(f);
  return out;
}

}  // namespace detail

using detail::FormulaSet;

bool operator==(const Formula& a, const Formula& b) { return a.type == b.type && pcf::alpha_eq(a.term, b.term); }

std::string print_formula(const Formula& f) {
  return pcf::print_pcf_term(f.term) + " : " + pcf::print_pcf_type(f.type);
}

bool is_variable_typing(const Formula& f) { return f.term.kind() == PcfTermKind::Var; }

bool same_sequent(const Sequent& a, const Sequent& b) {
  return FormulaSet(a.left) == FormulaSet(b.left) && FormulaSet(a.right) == FormulaSet(b.right);
}

std::string print_sequent(const Sequent& s) {
  std::string l = detail::print_side(FormulaSet(s.left));
  std::string r = detail::print_side(FormulaSet(s.right));
  return (l.empty() ? "" : l + " ") + "|-" + (r.empty() ? "" : " " + r);
}

std::string_view to_string(System s) {
  switch (s) {
    case System::TwoSided: return "two-sided";
    case System::TwoSidedSuccess: return "two-sided-success";
    case System::OneSided: return "one-sided";
  }
  return "?";
}

std::optional<System> system_from_string(std::string_view s) {
  for (System k : {System::TwoSided, System::TwoSidedSuccess, System::OneSided})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

Derivation make_node(std::string rule, Sequent conclusion, std::vector<Derivation> premises) {
  return std::make_shared<const Node>(Node{std::move(rule), std::move(conclusion), std::move(premises)});
}

std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d->premises) n += node_count(p);
  return n;
}

namespace {

// Rule name and premise count.
struct RuleInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr RuleInfo kTwoSidedRules[] = {
    {"Id", 0},     {"Dis", 1},   {"ZeroR", 0},  {"SuccR", 1},  {"PredR", 1},   {"LetR", 2},   {"AppR", 2},
    {"PairR", 2},  {"AbsR", 1},  {"AbnR", 1},   {"FixR", 1},   {"IfZR", 3},    {"SuccL", 1},  {"PredL", 1},
    {"AppL", 2},   {"PairL", 1}, {"LetL1", 1},  {"LetL2", 3},  {"IfZL1", 1},   {"IfZL2", 2},  {"OkVarR", 0},
    {"OkL", 1},    {"OkR", 1},   {"OkApL1", 1}, {"OkApL2", 1}, {"OkSL", 1},    {"OkPL", 1},   {"OkPrL", 1},
};

constexpr RuleInfo kSuccessRules[] = {{"CompL", 1}, {"CompR", 1}};

constexpr RuleInfo kOneSidedRules[] = {
    {"Ok", 0},    {"OkC1", 0},  {"OkC2", 1},  {"Contra", 0}, {"Var", 0},   {"Disj", 1},  {"Zero", 0},  {"Succ1", 1},
    {"Succ2", 1}, {"Pred1", 1}, {"Pred2", 1}, {"Abs", 1},    {"Fix", 1},   {"Let1", 2},  {"Let2", 3},  {"Let3", 1},
    {"App1", 2},  {"App2", 1},  {"App3", 1},  {"Pair1", 2},  {"Pair2", 1}, {"Pair3", 1}, {"IfZ1", 1},  {"IfZ2", 2},
};

std::optional<RuleInfo> find_rule(System s, std::string_view name) {
  if (s == System::OneSided) {
    for (const auto& r : kOneSidedRules)
      if (r.name == name) return r;
    return std::nullopt;
  }
  for (const auto& r : kTwoSidedRules)
    if (r.name == name) return r;
  if (s == System::TwoSidedSuccess)
    for (const auto& r : kSuccessRules)
      if (r.name == name) return r;
  return std::nullopt;
}

struct Attempt {
  enum class Kind { NoMatch, Match, Mismatch } kind;
  std::string why;
};

Attempt no_match() { return {Attempt::Kind::NoMatch, {}}; }
Attempt matched() { return {Attempt::Kind::Match, {}}; }
Attempt mismatch(std::string why) { return {Attempt::Kind::Mismatch, std::move(why)}; }

using Err = std::optional<std::string>;

Attempt require(std::initializer_list<Err> errs) {
  for (const auto& e : errs)
    if (e) return mismatch(*e);
  return matched();
}

/// First match wins; otherwise the first mismatch, otherwise `none`.
Attempt first_of(const std::vector<std::function<Attempt()>>& tries, const std::string& none) {
  std::optional<Attempt> bad;
  for (const auto& t : tries) {
    Attempt a = t();
    if (a.kind == Attempt::Kind::Match) return a;
    if (a.kind == Attempt::Kind::Mismatch && !bad) bad = a;
  }
  return bad ? *bad : mismatch(none);
}

Formula F(const PcfTerm& t, const PcfType& a) { return Formula{t, a}; }

PcfType nat() { return PcfType::nat(); }
PcfType ok() { return PcfType::ok(); }
PcfType comp(const PcfType& a) { return PcfType::comp(a); }

std::string show(const FormulaSet& l, const FormulaSet& r) {
  std::string ls = detail::print_side(l), rs = detail::print_side(r);
  return (ls.empty() ? "" : ls + " ") + "|-" + (rs.empty() ? "" : " " + rs);
}

struct NodeView {
  FormulaSet left, right;
  std::vector<std::pair<FormulaSet, FormulaSet>> premises;
};

/// Types in premise `side` whose subject is alpha-equivalent to `subject`.
std::vector<PcfType> types_of(const FormulaSet& side, const PcfTerm& subject) {
  std::vector<PcfType> out;
  for (const auto& [k, f] : side.items())
    if (pcf::alpha_eq(f.term, subject)) out.push_back(f.type);
  return out;
}

// ---------------------------------------------------------------- two-sided

struct Principal {
  Formula phi;
  bool right;
  FormulaSet ctx_left, ctx_right;
};

class TwoSidedChecker {
 public:
  TwoSidedChecker(const NodeView& v, bool success) : v_(v), success_(success) {}

  Attempt check(std::string_view rule) const {
    if (rule == "Id") {
      for (const auto& [k, f] : v_.left.items())
        if (is_variable_typing(f) && v_.right.has(f)) return matched();
      return mismatch("no variable typing occurs on both sides");
    }
    if (rule == "ZeroR") {
      return v_.right.has(F(PcfTerm::zero(), nat())) ? matched() : mismatch("zero : Nat is not on the right");
    }
    if (rule == "OkVarR") {
      for (const auto& [k, f] : v_.right.items())
        if (is_variable_typing(f) && f.type.is(PcfTypeKind::Ok)) return matched();
      return mismatch("no variable typed Ok on the right");
    }
    if (rule == "Dis") return on(false, [&](const Principal& p) { return dis(p); });
    if (rule == "SuccR") return unary_nat(true, PcfTermKind::Succ, nat(), nat(), true);
    if (rule == "PredR") return unary_nat(true, PcfTermKind::Pred, nat(), nat(), true);
    if (rule == "SuccL") return unary_nat(false, PcfTermKind::Succ, nat(), nat(), false);
    if (rule == "PredL") return unary_nat(false, PcfTermKind::Pred, nat(), nat(), false);
    if (rule == "OkSL") return unary_nat(false, PcfTermKind::Succ, ok(), nat(), false);
    if (rule == "OkPL") return unary_nat(false, PcfTermKind::Pred, ok(), nat(), false);
    if (rule == "LetR") return on(true, [&](const Principal& p) { return let_r(p); });
    if (rule == "AppR") return on(true, [&](const Principal& p) { return app_r(p); });
    if (rule == "PairR") return on(true, [&](const Principal& p) { return pair_r(p); });
    if (rule == "AbsR") return on(true, [&](const Principal& p) { return abs_r(p, false); });
    if (rule == "AbnR") return on(true, [&](const Principal& p) { return abs_r(p, true); });
    if (rule == "FixR") return on(true, [&](const Principal& p) { return fix_r(p); });
    if (rule == "IfZR") return on(true, [&](const Principal& p) { return ifz_r(p); });
    if (rule == "AppL") return on(false, [&](const Principal& p) { return app_l(p); });
    if (rule == "PairL") return on(false, [&](const Principal& p) { return pair_l(p, false); });
    if (rule == "OkPrL") return on(false, [&](const Principal& p) { return pair_l(p, true); });
    if (rule == "LetL1") return on(false, [&](const Principal& p) { return let_l1(p); });
    if (rule == "LetL2") return on(false, [&](const Principal& p) { return let_l2(p); });
    if (rule == "IfZL1") return on(false, [&](const Principal& p) { return ifz_l1(p); });
    if (rule == "IfZL2") return on(false, [&](const Principal& p) { return ifz_l2(p); });
    if (rule == "OkL") return on(false, [&](const Principal& p) { return ok_l(p); });
    if (rule == "OkR") return on(true, [&](const Principal& p) { return ok_r(p); });
    if (rule == "OkApL1") return on(false, [&](const Principal& p) { return ok_app_l1(p); });
    if (rule == "OkApL2") return on(false, [&](const Principal& p) { return ok_app_l2(p); });
    if (rule == "CompL") return on(false, [&](const Principal& p) { return comp_lr(p); });
    if (rule == "CompR") return on(true, [&](const Principal& p) { return comp_lr(p); });
    return mismatch("unknown rule");
  }

 private:
  Attempt on(bool right, const std::function<Attempt(const Principal&)>& body) const {
    const FormulaSet& side = right ? v_.right : v_.left;
    std::optional<Attempt> bad;
    for (const auto& [k, phi] : side.items()) {
      Principal p{phi, right, right ? v_.left : v_.left.without(phi), right ? v_.right.without(phi) : v_.right};
      Attempt a = body(p);
      if (a.kind == Attempt::Kind::Match) return a;
      if (a.kind == Attempt::Kind::Mismatch && !bad) bad = a;
    }
    if (bad) return *bad;
    return mismatch(std::string("no formula on the ") + (right ? "right" : "left") + " has the principal shape");
  }

  // Premise i is the context plus the additions, with the principal
  // formula optionally retained.
  Err premise(std::size_t i, const Principal& p, const std::vector<Formula>& add_left,
              const std::vector<Formula>& add_right) const {
    FormulaSet l = p.ctx_left.plus(add_left), r = p.ctx_right.plus(add_right);
    const auto& [pl, pr] = v_.premises[i];
    if (pl == l && pr == r) return std::nullopt;
    FormulaSet l2 = p.right ? l : l.plus({p.phi});
    FormulaSet r2 = p.right ? r.plus({p.phi}) : r;
    if (pl == l2 && pr == r2) return std::nullopt;
    return "premise " + std::to_string(i + 1) + " should be '" + show(l, r) + "' but is '" + show(pl, pr) + "'";
  }

  Err fresh(const Principal& p, const std::string& x) const {
    if (p.ctx_left.has_free(x) || p.ctx_right.has_free(x)) return "bound variable " + x + " occurs free in the context";
    return std::nullopt;
  }

  Attempt dis(const Principal& p) const {
    std::vector<std::function<Attempt()>> tries;
    for (const auto& b : types_of(v_.premises[0].second, p.phi.term)) {
      if (!pcf::disjoint(p.phi.type, b)) continue;
      tries.push_back([&, b] { return require({premise(0, p, {}, {F(p.phi.term, b)})}); });
    }
    return first_of(tries, "premise has no typing of the subject at a type disjoint from " +
                               pcf::print_pcf_type(p.phi.type));
  }

  Attempt unary_nat(bool right, PcfTermKind k, const PcfType& concl, const PcfType& prem, bool prem_right) const {
    return on(right, [&](const Principal& p) {
      if (p.phi.term.kind() != k || !(p.phi.type == concl)) return no_match();
      Formula sub = F(p.phi.term.child(0), prem);
      return prem_right ? require({premise(0, p, {}, {sub})}) : require({premise(0, p, {sub}, {})});
    });
  }

  Attempt let_r(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::Let) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (const auto& bc : types_of(v_.premises[0].second, t.child(0))) {
      if (!bc.is(PcfTypeKind::Prod)) continue;
      tries.push_back([&, bc] {
        return require({fresh(p, t.name()), fresh(p, t.name2()), premise(0, p, {}, {F(t.child(0), bc)}),
                        premise(1, p, {F(PcfTerm::var(t.name()), bc.left()), F(PcfTerm::var(t.name2()), bc.right())},
                                {F(t.child(1), p.phi.type)})});
      });
    }
    return first_of(tries, "premise 1 has no product typing of the scrutinee");
  }

  Attempt app_r(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::App) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (const auto& ba : types_of(v_.premises[0].second, t.child(0))) {
      if (!ba.is(PcfTypeKind::To) || !(ba.right() == p.phi.type)) continue;
      tries.push_back([&, ba] {
        return require({premise(0, p, {}, {F(t.child(0), ba)}), premise(1, p, {}, {F(t.child(1), ba.left())})});
      });
    }
    return first_of(tries, "premise 1 has no sufficiency typing of the function with codomain " +
                               pcf::print_pcf_type(p.phi.type));
  }

  Attempt pair_r(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::Pair || !p.phi.type.is(PcfTypeKind::Prod)) return no_match();
    return require({premise(0, p, {}, {F(t.child(0), p.phi.type.left())}),
                    premise(1, p, {}, {F(t.child(1), p.phi.type.right())})});
  }

  Attempt abs_r(const Principal& p, bool necessity) const {
    const PcfTerm& t = p.phi.term;
    const PcfType& a = p.phi.type;
    if (t.kind() != PcfTermKind::Abs || !a.is(necessity ? PcfTypeKind::Nec : PcfTypeKind::To)) return no_match();
    Formula x = F(PcfTerm::var(t.name()), a.left());
    Formula body = F(t.child(0), a.right());
    if (!necessity) return require({fresh(p, t.name()), premise(0, p, {x}, {body})});
    Err fv;
    if (!success_ && !pcf::finitely_verifiable(a.right()))
      fv = "necessity codomain " + pcf::print_pcf_type(a.right()) + " is not finitely verifiable";
    return require({fv, fresh(p, t.name()), premise(0, p, {body}, {x})});
  }

  Attempt fix_r(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::Fix) return no_match();
    return require(
        {fresh(p, t.name()), premise(0, p, {F(PcfTerm::var(t.name()), p.phi.type)}, {F(t.child(0), p.phi.type)})});
  }

  Attempt ifz_r(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::IfZ) return no_match();
    return require({premise(0, p, {}, {F(t.child(0), nat())}), premise(1, p, {}, {F(t.child(1), p.phi.type)}),
                    premise(2, p, {}, {F(t.child(2), p.phi.type)})});
  }

  Attempt app_l(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::App) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (const auto& ba : types_of(v_.premises[0].second, t.child(0))) {
      if (!ba.is(PcfTypeKind::Nec) || !(ba.right() == p.phi.type)) continue;
      tries.push_back([&, ba] {
        return require({premise(0, p, {}, {F(t.child(0), ba)}), premise(1, p, {F(t.child(1), ba.left())}, {})});
      });
    }
    return first_of(tries, "premise 1 has no necessity typing of the function with codomain " +
                               pcf::print_pcf_type(p.phi.type));
  }

  Attempt pair_l(const Principal& p, bool okay) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::Pair) return no_match();
    if (okay ? !p.phi.type.is(PcfTypeKind::Ok) : !p.phi.type.is(PcfTypeKind::Prod)) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (std::size_t i = 0; i < 2; ++i) {
      PcfType ai = okay ? ok() : (i == 0 ? p.phi.type.left() : p.phi.type.right());
      tries.push_back([&, i, ai] { return require({premise(0, p, {F(t.child(i), ai)}, {})}); });
    }
    return first_of(tries, "premise refutes neither component");
  }

  Attempt let_l1(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::Let) return no_match();
    return require({fresh(p, t.name()), fresh(p, t.name2()), premise(0, p, {F(t.child(1), p.phi.type)}, {})});
  }

  Attempt let_l2(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::Let) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (const auto& bb : types_of(v_.premises[0].first, t.child(0))) {
      if (!bb.is(PcfTypeKind::Prod)) continue;
      tries.push_back([&, bb] {
        Formula body = F(t.child(1), p.phi.type);
        return require({fresh(p, t.name()), fresh(p, t.name2()), premise(0, p, {F(t.child(0), bb)}, {}),
                        premise(1, p, {body}, {F(PcfTerm::var(t.name()), bb.left())}),
                        premise(2, p, {body}, {F(PcfTerm::var(t.name2()), bb.right())})});
      });
    }
    return first_of(tries, "premise 1 has no product typing of the scrutinee on the left");
  }

  Attempt ifz_l1(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::IfZ) return no_match();
    return require({premise(0, p, {F(t.child(0), nat())}, {})});
  }

  Attempt ifz_l2(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::IfZ) return no_match();
    return require(
        {premise(0, p, {F(t.child(1), p.phi.type)}, {}), premise(1, p, {F(t.child(2), p.phi.type)}, {})});
  }

  Attempt ok_l(const Principal& p) const { return require({premise(0, p, {F(p.phi.term, ok())}, {})}); }

  Attempt ok_r(const Principal& p) const {
    if (!p.phi.type.is(PcfTypeKind::Ok)) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (const auto& a : types_of(v_.premises[0].second, p.phi.term))
      tries.push_back([&, a] { return require({premise(0, p, {}, {F(p.phi.term, a)})}); });
    return first_of(tries, "premise has no typing of the subject on the right");
  }

  Attempt ok_app_l1(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::App || !p.phi.type.is(PcfTypeKind::Ok)) return no_match();
    std::vector<std::function<Attempt()>> tries;
    for (const auto& a : types_of(v_.premises[0].first, t.child(0))) {
      if (!a.is(PcfTypeKind::Nec) || !a.left().is(PcfTypeKind::Ok)) continue;
      tries.push_back([&, a] { return require({premise(0, p, {F(t.child(0), a)}, {})}); });
    }
    return first_of(tries, "premise has no typing Ok ~> A of the function on the left");
  }

  Attempt ok_app_l2(const Principal& p) const {
    const PcfTerm& t = p.phi.term;
    if (t.kind() != PcfTermKind::App || !p.phi.type.is(PcfTypeKind::Ok)) return no_match();
    return require({premise(0, p, {F(t.child(1), ok())}, {})});
  }

  // M : A^c on one side from M : A on the other; complements cancel.
  Attempt comp_lr(const Principal& p) const {
    Formula flipped = F(p.phi.term, comp(p.phi.type));
    return p.right ? require({premise(0, p, {flipped}, {})}) : require({premise(0, p, {}, {flipped})});
  }

  const NodeView& v_;
  bool success_;
};

// ---------------------------------------------------------------- one-sided

class OneSidedChecker {
 public:
  OneSidedChecker(const NodeView& v, std::vector<Formula> goals)
      : v_(v), gamma_(v.left), goal_(v.right.formulas().front()), goals_(std::move(goals)) {}

  Attempt check(std::string_view rule) const {
    const PcfTerm& m = goal_.term;
    const PcfType& a = goal_.type;
    auto shape = [&](PcfTermKind k) { return m.kind() == k; };
    if (rule == "Ok") return a.is(PcfTypeKind::Ok) ? matched() : mismatch("type is not Ok");
    if (rule == "OkC1") {
      for (const auto& [k, f] : gamma_.items())
        if (f.type == comp(ok())) return matched();
      return mismatch("no variable typed Ok^c in the environment");
    }
    if (rule == "Contra") {
      for (const auto& [k, f] : gamma_.items())
        if (gamma_.has(F(f.term, comp(f.type)))) return matched();
      return mismatch("no contradictory pair of variable typings in the environment");
    }
    if (rule == "Var") {
      return shape(PcfTermKind::Var) && gamma_.has(goal_) ? matched() : mismatch("typing is not in the environment");
    }
    if (rule == "Zero") {
      return shape(PcfTermKind::Zero) && a.is(PcfTypeKind::Nat) ? matched() : mismatch("expected zero : Nat");
    }
    if (rule == "OkC2") return require({premise(0, {}, F(m, comp(ok())))});
    if (rule == "Disj") {
      const Formula& p = premise_goal(0);
      if (!pcf::alpha_eq(p.term, m)) return mismatch("premise subject differs");
      if (!pcf::disjoint(p.type, comp(a)))
        return mismatch(pcf::print_pcf_type(p.type) + " is not disjoint from " + pcf::print_pcf_type(comp(a)));
      return require({premise(0, {}, p)});
    }
    if (rule == "Succ1" || rule == "Pred1") {
      if (!shape(rule == "Succ1" ? PcfTermKind::Succ : PcfTermKind::Pred) || !a.is(PcfTypeKind::Nat))
        return mismatch("expected a successor or predecessor at Nat");
      return require({premise(0, {}, F(m.child(0), nat()))});
    }
    if (rule == "Succ2" || rule == "Pred2") {
      if (!shape(rule == "Succ2" ? PcfTermKind::Succ : PcfTermKind::Pred))
        return mismatch("expected a successor or predecessor");
      return require({premise(0, {}, F(m.child(0), comp(nat())))});
    }
    if (rule == "Abs") {
      if (!shape(PcfTermKind::Abs) || !a.is(PcfTypeKind::To)) return mismatch("expected an abstraction at an arrow");
      return require({fresh(m.name()), premise(0, {F(PcfTerm::var(m.name()), a.left())}, F(m.child(0), a.right()))});
    }
    if (rule == "Fix") {
      if (!shape(PcfTermKind::Fix)) return mismatch("expected a fixpoint");
      return require({fresh(m.name()), premise(0, {F(PcfTerm::var(m.name()), a)}, F(m.child(0), a))});
    }
    if (rule == "Let1" || rule == "Let2" || rule == "Let3") {
      if (!shape(PcfTermKind::Let)) return mismatch("expected a let");
      Err fr = fresh(m.name());
      if (!fr) fr = fresh(m.name2());
      PcfTerm x = PcfTerm::var(m.name()), y = PcfTerm::var(m.name2());
      Formula body = F(m.child(1), a);
      if (rule == "Let3") return require({fr, premise(0, {}, body)});
      PcfType t = premise_goal(0).type;
      if (rule == "Let1") {
        if (!t.is(PcfTypeKind::Prod)) return mismatch("premise 1 does not type the scrutinee at a product");
        return require({fr, premise(0, {}, F(m.child(0), t)), premise(1, {F(x, t.left()), F(y, t.right())}, body)});
      }
      PcfType bb = comp(t);
      if (!bb.is(PcfTypeKind::Prod)) return mismatch("premise 1 does not type the scrutinee at a complemented product");
      return require({fr, premise(0, {}, F(m.child(0), t)), premise(1, {F(x, comp(bb.left()))}, body),
                      premise(2, {F(y, comp(bb.right()))}, body)});
    }
    if (rule == "App1") {
      if (!shape(PcfTermKind::App)) return mismatch("expected an application");
      PcfType t = premise_goal(0).type;
      if (!t.is(PcfTypeKind::To) || !(t.right() == a)) return mismatch("premise 1 is not an arrow into the goal type");
      return require({premise(0, {}, F(m.child(0), t)), premise(1, {}, F(m.child(1), t.left()))});
    }
    if (rule == "App2") {
      if (!shape(PcfTermKind::App)) return mismatch("expected an application");
      return require({premise(0, {}, F(m.child(0), comp(PcfType::to(comp(ok()), a))))});
    }
    if (rule == "App3") {
      if (!shape(PcfTermKind::App)) return mismatch("expected an application");
      return require({premise(0, {}, F(m.child(1), comp(ok())))});
    }
    if (rule == "Pair1") {
      if (!shape(PcfTermKind::Pair) || !a.is(PcfTypeKind::Prod)) return mismatch("expected a pair at a product");
      return require({premise(0, {}, F(m.child(0), a.left())), premise(1, {}, F(m.child(1), a.right()))});
    }
    if (rule == "Pair2" || rule == "Pair3") {
      if (!shape(PcfTermKind::Pair)) return mismatch("expected a pair");
      bool three = rule == "Pair3";
      PcfType prod = comp(a);
      if (three && !prod.is(PcfTypeKind::Prod)) return mismatch("expected a complemented product");
      std::vector<std::function<Attempt()>> tries;
      for (std::size_t i = 0; i < 2; ++i) {
        PcfType ti = three ? comp(i == 0 ? prod.left() : prod.right()) : comp(ok());
        tries.push_back([&, i, ti] { return require({premise(0, {}, F(m.child(i), ti))}); });
      }
      return first_of(tries, "premise refutes neither component");
    }
    if (rule == "IfZ1") {
      if (!shape(PcfTermKind::IfZ)) return mismatch("expected a conditional");
      return require({premise(0, {}, F(m.child(0), comp(nat())))});
    }
    if (rule == "IfZ2") {
      if (!shape(PcfTermKind::IfZ)) return mismatch("expected a conditional");
      return require({premise(0, {}, F(m.child(1), a)), premise(1, {}, F(m.child(2), a))});
    }
    return mismatch("unknown rule");
  }

 private:
  // Premise typings, read off to recover types the conclusion leaves open.
  const Formula& premise_goal(std::size_t i) const { return goals_.at(i); }

  Err premise(std::size_t i, const std::vector<Formula>& add, const Formula& goal) const {
    FormulaSet g = gamma_.plus(add);
    const auto& [pl, pr] = v_.premises[i];
    FormulaSet r;
    r.add(goal);
    if (pl == g && pr == r) return std::nullopt;
    return "premise " + std::to_string(i + 1) + " should be '" + show(g, r) + "' but is '" + show(pl, pr) + "'";
  }

  Err fresh(const std::string& x) const {
    if (gamma_.mentions(x)) return "bound variable " + x + " is mentioned in the environment";
    return std::nullopt;
  }

  const NodeView& v_;
  FormulaSet gamma_;
  Formula goal_;
  std::vector<Formula> goals_;
};

Err type_allowed(const PcfType& t, System s) {
  if (s != System::TwoSided) return std::nullopt;
  switch (t.kind()) {
    case PcfTypeKind::Comp: return "complement type " + pcf::print_pcf_type(t) + " outside the success system";
    case PcfTypeKind::Nec:
      if (!pcf::finitely_verifiable(t.right()))
        return "necessity codomain " + pcf::print_pcf_type(t.right()) + " is not finitely verifiable";
      [[fallthrough]];
    case PcfTypeKind::To:
    case PcfTypeKind::Prod:
      if (auto e = type_allowed(t.left(), s)) return e;
      return type_allowed(t.right(), s);
    default: return std::nullopt;
  }
}

Sequent normalise(const Sequent& s, System sys) {
  if (sys != System::OneSided) return s;
  Sequent out;
  for (const auto& f : s.left) out.left.push_back(F(f.term, pcf::expand_nec(f.type)));
  for (const auto& f : s.right) out.right.push_back(F(f.term, pcf::expand_nec(f.type)));
  return out;
}

Err one_sided_shape(const Sequent& s) {
  if (FormulaSet(s.right).size() != 1) return std::string("one-sided judgement needs exactly one typing on the right");
  for (const auto& f : s.left)
    if (!is_variable_typing(f)) return "environment holds a non-variable typing " + print_formula(f);
  return std::nullopt;
}

Err check_node(const Node& n, System sys) {
  auto info = find_rule(sys, n.rule);
  if (!info) return "unknown rule for the " + std::string(to_string(sys)) + " system";
  if (n.premises.size() != info->arity)
    return "expected " + std::to_string(info->arity) + " premises, found " + std::to_string(n.premises.size());
  for (const auto& p : n.premises)
    if (!p) return std::string("missing premise");
  for (const auto* side : {&n.conclusion.left, &n.conclusion.right})
    for (const auto& f : *side)
      if (auto e = type_allowed(f.type, sys)) return e;

  Sequent c = normalise(n.conclusion, sys);
  NodeView v{FormulaSet(c.left), FormulaSet(c.right), {}};
  std::vector<Formula> goals;
  for (const auto& p : n.premises) {
    Sequent ps = normalise(p->conclusion, sys);
    v.premises.emplace_back(FormulaSet(ps.left), FormulaSet(ps.right));
    if (sys == System::OneSided) {
      if (auto e = one_sided_shape(ps)) return "premise: " + *e;
      goals.push_back(FormulaSet(ps.right).formulas().front());
    }
  }
  Attempt a = no_match();
  if (sys == System::OneSided) {
    if (auto e = one_sided_shape(c)) return e;
    a = OneSidedChecker(v, std::move(goals)).check(n.rule);
  } else {
    a = TwoSidedChecker(v, sys == System::TwoSidedSuccess).check(n.rule);
  }
  if (a.kind == Attempt::Kind::Match) return std::nullopt;
  return a.why.empty() ? std::string("rule does not apply") : a.why;
}

bool walk(const Derivation& d, System sys, std::size_t& index, KernelReport& out) {
  if (!d) {
    out = KernelReport{false, index, "", "missing derivation"};
    return false;
  }
  if (auto e = check_node(*d, sys)) {
    out = KernelReport{false, index, d->rule, *e + " at '" + print_sequent(d->conclusion) + "'"};
    return false;
  }
  for (const auto& p : d->premises) {
    ++index;
    if (!walk(p, sys, index, out)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string_view> rule_names(System s) {
  std::vector<std::string_view> out;
  if (s == System::OneSided) {
    for (const auto& r : kOneSidedRules) out.push_back(r.name);
    return out;
  }
  for (const auto& r : kTwoSidedRules) out.push_back(r.name);
  if (s == System::TwoSidedSuccess)
    for (const auto& r : kSuccessRules) out.push_back(r.name);
  return out;
}

KernelReport check(const Derivation& d, System s) {
  KernelReport out;
  std::size_t index = 0;
  walk(d, s, index, out);
  return out;
}

Sequent one_sided_goal(const std::vector<Formula>& gamma, const PcfTerm& m, const PcfType& a) {
  Sequent s;
  for (const auto& f : gamma) s.left.push_back(F(f.term, pcf::expand_nec(f.type)));
  s.right.push_back(F(m, pcf::expand_nec(a)));
  return s;
}

}  // namespace twoside::kernel
