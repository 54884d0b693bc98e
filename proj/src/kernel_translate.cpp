// kernel_translate.cpp - two-sided derivations to one-sided derivations
#include <functional>

#include "kernel_internal.hpp"
#include "twoside/kernel.hpp"

namespace twoside::kernel {

using detail::FormulaSet;
using pcf::PcfTermKind;
using pcf::PcfTypeKind;

namespace {

// The formula that becomes the one-sided subject.
struct Focus {
  Formula formula;
  bool right;
};

[[noreturn]] void refuse(const std::string& why) { throw TranslationError("translate: " + why); }

PcfType comp(const PcfType& a) { return PcfType::comp(a); }
PcfType nat() { return PcfType::nat(); }
PcfType ok() { return PcfType::ok(); }

// Gamma u Delta^c |- M : A (right focus) or M : A^c (left focus).
Sequent goal_of(const Sequent& s, const Focus& focus) {
  FormulaSet left(s.left), right(s.right);
  (focus.right ? right : left) = (focus.right ? right : left).without(focus.formula);
  Sequent out;
  for (const auto& [k, f] : left.items()) {
    if (!is_variable_typing(f)) refuse("side formula " + print_formula(f) + " is not a variable typing");
    out.left.push_back(Formula{f.term, pcf::expand_nec(f.type)});
  }
  for (const auto& [k, f] : right.items()) {
    if (!is_variable_typing(f)) refuse("side formula " + print_formula(f) + " is not a variable typing");
    out.left.push_back(Formula{f.term, comp(pcf::expand_nec(f.type))});
  }
  PcfType t = pcf::expand_nec(focus.formula.type);
  out.right.push_back(Formula{focus.formula.term, focus.right ? t : comp(t)});
  return out;
}

class Translator {
 public:
  Derivation run(const Derivation& d, const Focus& focus) {
    const Node& n = *d;
    Sequent goal = goal_of(n.conclusion, focus);
    FormulaSet left(n.conclusion.left), right(n.conclusion.right);
    const Formula& f = focus.formula;
    const PcfTerm& m = f.term;
    const PcfType& a = f.type;
    auto node = [&](std::string rule, std::vector<Derivation> ps = {}) {
      return make_node(std::move(rule), goal, std::move(ps));
    };

    if (n.rule == "Id") {
      if (is_variable_typing(f) && (focus.right ? left : right).has(f)) return node("Var");
      for (const auto& [k, g] : left.items())
        if (is_variable_typing(g) && right.has(g)) return node("Contra");
      refuse("Id node without a shared variable typing");
    }
    if (n.rule == "OkVarR") {
      if (focus.right && a.is(PcfTypeKind::Ok)) return node("Ok");
      for (const auto& [k, g] : right.without(f).items())
        if (is_variable_typing(g) && g.type.is(PcfTypeKind::Ok)) return node("OkC1");
      refuse("OkVarR node without a variable typed Ok");
    }
    if (n.rule == "ZeroR") {
      if (focus.right && m.kind() == PcfTermKind::Zero && a.is(PcfTypeKind::Nat)) return node("Zero");
      refuse("ZeroR is not applied to the focus");
    }

    auto need = [&](bool right_side, bool shape) {
      if (focus.right != right_side || !shape) refuse(n.rule + " is not applied to the focus " + print_formula(f));
    };
    auto kind = [&](PcfTermKind k) { return m.kind() == k; };
    auto sub = [&](std::size_t i) -> const PcfTerm& { return m.child(i); };
    // Premise i with the given focus.
    auto prem = [&](std::size_t i, bool r, const PcfTerm& t, const PcfType& ty) {
      return run(n.premises.at(i), Focus{Formula{t, ty}, r});
    };
    // Premise i whose focus type is read off the premise.
    auto choose = [&](std::size_t i, bool r, const PcfTerm& t, const std::function<bool(const PcfType&)>& ok_type,
                      const std::function<std::vector<Derivation>(const PcfType&)>& build) {
      const Sequent& ps = n.premises.at(i)->conclusion;
      std::optional<TranslationError> last;
      for (const auto& g : r ? ps.right : ps.left) {
        if (!pcf::alpha_eq(g.term, t) || !ok_type(g.type)) continue;
        try {
          return build(g.type);
        } catch (const TranslationError& e) {
          if (!last) last = e;
        }
      }
      if (last) throw *last;
      refuse("premise " + std::to_string(i + 1) + " of " + n.rule + " has no suitable focus");
    };

    const std::string& r = n.rule;
    if (r == "Dis") {
      need(false, true);
      return node("Disj", choose(0, true, m, [&](const PcfType& b) { return pcf::disjoint(a, b); },
                                 [&](const PcfType& b) { return std::vector{prem(0, true, m, b)}; }));
    }
    if (r == "SuccR" || r == "PredR") {
      need(true, kind(r == "SuccR" ? PcfTermKind::Succ : PcfTermKind::Pred) && a.is(PcfTypeKind::Nat));
      return node(r == "SuccR" ? "Succ1" : "Pred1", {prem(0, true, sub(0), nat())});
    }
    if (r == "SuccL" || r == "OkSL" || r == "PredL" || r == "OkPL") {
      bool succ = r == "SuccL" || r == "OkSL";
      bool okay = r == "OkSL" || r == "OkPL";
      need(false, kind(succ ? PcfTermKind::Succ : PcfTermKind::Pred) && a.is(okay ? PcfTypeKind::Ok : PcfTypeKind::Nat));
      return node(succ ? "Succ2" : "Pred2", {prem(0, false, sub(0), nat())});
    }
    if (r == "LetR") {
      need(true, kind(PcfTermKind::Let));
      return node("Let1", choose(0, true, sub(0), [](const PcfType& t) { return t.is(PcfTypeKind::Prod); },
                                 [&](const PcfType& t) {
                                   return std::vector{prem(0, true, sub(0), t), prem(1, true, sub(1), a)};
                                 }));
    }
    if (r == "AppR") {
      need(true, kind(PcfTermKind::App));
      return node("App1", choose(0, true, sub(0), [&](const PcfType& t) { return t.is(PcfTypeKind::To) && t.right() == a; },
                                 [&](const PcfType& t) {
                                   return std::vector{prem(0, true, sub(0), t), prem(1, true, sub(1), t.left())};
                                 }));
    }
    if (r == "PairR") {
      need(true, kind(PcfTermKind::Pair) && a.is(PcfTypeKind::Prod));
      return node("Pair1", {prem(0, true, sub(0), a.left()), prem(1, true, sub(1), a.right())});
    }
    if (r == "AbsR") {
      need(true, kind(PcfTermKind::Abs) && a.is(PcfTypeKind::To));
      return node("Abs", {prem(0, true, sub(0), a.right())});
    }
    if (r == "AbnR") {
      need(true, kind(PcfTermKind::Abs) && a.is(PcfTypeKind::Nec));
      return node("Abs", {prem(0, false, sub(0), a.right())});
    }
    if (r == "FixR") {
      need(true, kind(PcfTermKind::Fix));
      return node("Fix", {prem(0, true, sub(0), a)});
    }
    if (r == "IfZR") {
      need(true, kind(PcfTermKind::IfZ));
      return node("IfZ2", {prem(1, true, sub(1), a), prem(2, true, sub(2), a)});
    }
    if (r == "AppL") {
      need(false, kind(PcfTermKind::App));
      return node("App1", choose(0, true, sub(0), [&](const PcfType& t) { return t.is(PcfTypeKind::Nec) && t.right() == a; },
                                 [&](const PcfType& t) {
                                   return std::vector{prem(0, true, sub(0), t), prem(1, false, sub(1), t.left())};
                                 }));
    }
    if (r == "PairL" || r == "OkPrL") {
      bool okay = r == "OkPrL";
      need(false, kind(PcfTermKind::Pair) && a.is(okay ? PcfTypeKind::Ok : PcfTypeKind::Prod));
      std::optional<TranslationError> last;
      for (std::size_t i = 0; i < 2; ++i) {
        PcfType ai = okay ? ok() : (i == 0 ? a.left() : a.right());
        if (!FormulaSet(n.premises.at(0)->conclusion.left).has(Formula{sub(i), ai})) continue;
        try {
          return node(okay ? "Pair2" : "Pair3", {prem(0, false, sub(i), ai)});
        } catch (const TranslationError& e) {
          if (!last) last = e;
        }
      }
      if (last) throw *last;
      refuse(r + " premise refutes neither component");
    }
    if (r == "LetL1") {
      need(false, kind(PcfTermKind::Let));
      return node("Let3", {prem(0, false, sub(1), a)});
    }
    if (r == "LetL2") {
      need(false, kind(PcfTermKind::Let));
      return node("Let2", choose(0, false, sub(0), [](const PcfType& t) { return t.is(PcfTypeKind::Prod); },
                                 [&](const PcfType& t) {
                                   return std::vector{prem(0, false, sub(0), t), prem(1, false, sub(1), a),
                                                      prem(2, false, sub(1), a)};
                                 }));
    }
    if (r == "IfZL1") {
      need(false, kind(PcfTermKind::IfZ));
      return node("IfZ1", {prem(0, false, sub(0), nat())});
    }
    if (r == "IfZL2") {
      need(false, kind(PcfTermKind::IfZ));
      return node("IfZ2", {prem(0, false, sub(1), a), prem(1, false, sub(2), a)});
    }
    if (r == "OkL") {
      need(false, true);
      return node("OkC2", {prem(0, false, m, ok())});
    }
    if (r == "OkR") {
      need(true, a.is(PcfTypeKind::Ok));
      return node("Ok");
    }
    if (r == "OkApL1") {
      need(false, kind(PcfTermKind::App) && a.is(PcfTypeKind::Ok));
      return node("App2", choose(0, false, sub(0),
                                 [](const PcfType& t) { return t.is(PcfTypeKind::Nec) && t.left().is(PcfTypeKind::Ok); },
                                 [&](const PcfType& t) {
                                   if (!t.right().is(PcfTypeKind::Ok))
                                     refuse("OkApL1 at Ok ~> " + pcf::print_pcf_type(t.right()) +
                                            " has no one-sided counterpart");
                                   return std::vector{prem(0, false, sub(0), t)};
                                 }));
    }
    if (r == "OkApL2") {
      need(false, kind(PcfTermKind::App) && a.is(PcfTypeKind::Ok));
      return node("App3", {prem(0, false, sub(1), ok())});
    }
    if (r == "CompL" || r == "CompR") {
      need(r == "CompR", true);
      return prem(0, !focus.right, m, comp(a));
    }
    refuse("unknown rule " + r);
  }
};

}  // namespace

Derivation translate_to_one_sided(const Derivation& d) {
  KernelReport rep = check(d, System::TwoSidedSuccess);
  if (!rep.ok) throw TranslationError("translate: input does not check: " + rep.message);
  std::vector<Focus> candidates;
  for (const auto& f : FormulaSet(d->conclusion.right).formulas())
    if (!is_variable_typing(f)) candidates.push_back(Focus{f, true});
  for (const auto& f : FormulaSet(d->conclusion.left).formulas())
    if (!is_variable_typing(f)) candidates.push_back(Focus{f, false});
  if (candidates.size() > 1) refuse("conclusion has more than one non-variable typing");
  if (candidates.empty()) {
    for (const auto& f : FormulaSet(d->conclusion.right).formulas()) candidates.push_back(Focus{f, true});
    for (const auto& f : FormulaSet(d->conclusion.left).formulas()) candidates.push_back(Focus{f, false});
  }
  std::optional<TranslationError> last;
  for (const auto& c : candidates) {
    try {
      return Translator().run(d, c);
    } catch (const TranslationError& e) {
      if (!last) last = e;
    }
  }
  if (last) throw *last;
  refuse("empty conclusion");
}

}  // namespace twoside::kernel
