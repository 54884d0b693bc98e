// kernel_prove.cpp - bounded backward proof search in the one-sided system
#include <map>
#include <tuple>

#include "kernel_internal.hpp"
#include "twoside/kernel.hpp"

namespace twoside::kernel {

using detail::FormulaSet;
using pcf::PcfTermKind;
using pcf::PcfTypeKind;

namespace {

PcfType comp(const PcfType& a) { return PcfType::comp(a); }
PcfType nat() { return PcfType::nat(); }
PcfType ok() { return PcfType::ok(); }

void collect(const PcfType& t, std::map<std::string, PcfType>& out) {
  out.emplace(pcf::print_pcf_type(t), t);
  switch (t.kind()) {
    case PcfTypeKind::Prod:
    case PcfTypeKind::To:
    case PcfTypeKind::Nec:
      collect(t.left(), out);
      collect(t.right(), out);
      break;
    case PcfTypeKind::Comp: collect(t.left(), out); break;
    default: break;
  }
}

std::string fresh_name(const std::string& base, const FormulaSet& gamma, const PcfTerm& avoid) {
  for (std::size_t i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!gamma.mentions(c) && !avoid.free_vars().count(c)) return c;
  }
}

class Prover {
 public:
  Prover(const FormulaSet& gamma, const PcfType& goal) {
    std::map<std::string, PcfType> pool;
    for (const auto& t : {nat(), ok(), comp(nat()), comp(ok()), PcfType::prod(nat(), nat()), PcfType::to(ok(), ok()),
                          PcfType::to(nat(), nat())})
      pool.emplace(pcf::print_pcf_type(t), t);
    for (const auto& [k, f] : gamma.items()) collect(f.type, pool);
    collect(goal, pool);
    for (const auto& [k, t] : pool) pool_.push_back(t);
  }

  std::optional<Derivation> prove(const FormulaSet& g, const PcfTerm& m, const PcfType& a, std::size_t depth) {
    if (depth == 0) return std::nullopt;
    std::string key = g.key() + "|-" + pcf::alpha_key(m) + " : " + pcf::print_pcf_type(a);
    auto it = failed_.find(key);
    if (it != failed_.end() && it->second >= depth) return std::nullopt;
    auto r = search(g, m, a, depth);
    if (!r) failed_[key] = std::max(depth, it == failed_.end() ? 0 : it->second);
    return r;
  }

 private:
  static Sequent judgement(const FormulaSet& g, const PcfTerm& m, const PcfType& a) {
    return Sequent{g.formulas(), {Formula{m, a}}};
  }

  std::optional<Derivation> search(const FormulaSet& g, const PcfTerm& m, const PcfType& a, std::size_t depth) {
    auto leaf = [&](const char* rule) { return make_node(rule, judgement(g, m, a)); };
    auto node = [&](const char* rule, std::vector<Derivation> ps, const PcfTerm& subject) {
      return make_node(rule, judgement(g, subject, a), std::move(ps));
    };
    std::size_t d = depth - 1;

    if (a.is(PcfTypeKind::Ok)) return leaf("Ok");
    if (m.kind() == PcfTermKind::Var && g.has(Formula{m, a})) return leaf("Var");
    if (m.kind() == PcfTermKind::Zero && a.is(PcfTypeKind::Nat)) return leaf("Zero");
    for (const auto& [k, f] : g.items()) {
      if (f.type == comp(ok())) return leaf("OkC1");
      if (g.has(Formula{f.term, comp(f.type)})) return leaf("Contra");
    }
    if (depth == 1) return std::nullopt;

    switch (m.kind()) {
      case PcfTermKind::Succ:
      case PcfTermKind::Pred: {
        bool succ = m.kind() == PcfTermKind::Succ;
        if (a.is(PcfTypeKind::Nat))
          if (auto p = prove(g, m.child(0), nat(), d)) return node(succ ? "Succ1" : "Pred1", {*p}, m);
        if (auto p = prove(g, m.child(0), comp(nat()), d)) return node(succ ? "Succ2" : "Pred2", {*p}, m);
        break;
      }
      case PcfTermKind::Abs: {
        if (!a.is(PcfTypeKind::To)) break;
        auto [x, body, subject] = rebind(g, m);
        if (auto p = prove(g.plus({Formula{PcfTerm::var(x), a.left()}}), body, a.right(), d))
          return node("Abs", {*p}, subject);
        break;
      }
      case PcfTermKind::Fix: {
        auto [x, body, subject] = rebind(g, m);
        if (auto p = prove(g.plus({Formula{PcfTerm::var(x), a}}), body, a, d)) return node("Fix", {*p}, subject);
        break;
      }
      case PcfTermKind::Let: {
        PcfTerm subject = m;
        std::string x = m.name(), y = m.name2();
        PcfTerm body = m.child(1);
        for (std::string* v : {&x, &y}) {
          if (!g.mentions(*v)) continue;
          std::string z = fresh_name(*v, g, subject);
          while (z == x || z == y) z += "'";
          body = pcf::substitute(body, *v, PcfTerm::var(z));
          *v = z;
          subject = PcfTerm::let(x, y, m.child(0), body);
        }
        if (auto p = prove(g, body, a, d)) return node("Let3", {*p}, subject);
        for (const auto& t : pool_) {
          if (!t.is(PcfTypeKind::Prod)) continue;
          if (auto p0 = prove(g, m.child(0), t, d))
            if (auto p1 = prove(g.plus({Formula{PcfTerm::var(x), t.left()}, Formula{PcfTerm::var(y), t.right()}}), body,
                                a, d))
              return node("Let1", {*p0, *p1}, subject);
          if (auto p0 = prove(g, m.child(0), comp(t), d))
            if (auto p1 = prove(g.plus({Formula{PcfTerm::var(x), comp(t.left())}}), body, a, d))
              if (auto p2 = prove(g.plus({Formula{PcfTerm::var(y), comp(t.right())}}), body, a, d))
                return node("Let2", {*p0, *p1, *p2}, subject);
        }
        break;
      }
      case PcfTermKind::App: {
        if (auto p = prove(g, m.child(1), comp(ok()), d)) return node("App3", {*p}, m);
        if (auto p = prove(g, m.child(0), comp(PcfType::to(comp(ok()), a)), d)) return node("App2", {*p}, m);
        for (const auto& b : pool_)
          if (auto p0 = prove(g, m.child(0), PcfType::to(b, a), d))
            if (auto p1 = prove(g, m.child(1), b, d)) return node("App1", {*p0, *p1}, m);
        break;
      }
      case PcfTermKind::Pair: {
        for (std::size_t i = 0; i < 2; ++i)
          if (auto p = prove(g, m.child(i), comp(ok()), d)) return node("Pair2", {*p}, m);
        if (a.is(PcfTypeKind::Prod))
          if (auto p0 = prove(g, m.child(0), a.left(), d))
            if (auto p1 = prove(g, m.child(1), a.right(), d)) return node("Pair1", {*p0, *p1}, m);
        PcfType prod = comp(a);
        if (prod.is(PcfTypeKind::Prod))
          for (std::size_t i = 0; i < 2; ++i)
            if (auto p = prove(g, m.child(i), comp(i == 0 ? prod.left() : prod.right()), d))
              return node("Pair3", {*p}, m);
        break;
      }
      case PcfTermKind::IfZ: {
        if (auto p = prove(g, m.child(0), comp(nat()), d)) return node("IfZ1", {*p}, m);
        if (auto p1 = prove(g, m.child(1), a, d))
          if (auto p2 = prove(g, m.child(2), a, d)) return node("IfZ2", {*p1, *p2}, m);
        break;
      }
      default: break;
    }

    if (!(a == comp(ok())))
      if (auto p = prove(g, m, comp(ok()), d)) return unary("OkC2", g, m, a, *p);
    PcfType positive = comp(a);
    if (a.is(PcfTypeKind::Comp))
      for (const auto& b : pool_)
        if (pcf::disjoint(b, positive))
          if (auto p = prove(g, m, b, d)) return unary("Disj", g, m, a, *p);
    return std::nullopt;
  }

  static Derivation unary(const char* rule, const FormulaSet& g, const PcfTerm& m, const PcfType& a,
                             const Derivation& p) {
    return make_node(rule, judgement(g, m, a), {p});
  }

  // Renames the binder of an abstraction or fixpoint away from the
  // environment; returns the binder, body and the renamed subject.
  static std::tuple<std::string, PcfTerm, PcfTerm> rebind(const FormulaSet& g, const PcfTerm& m) {
    if (!g.mentions(m.name())) return {m.name(), m.child(0), m};
    std::string z = fresh_name(m.name(), g, m);
    PcfTerm body = pcf::substitute(m.child(0), m.name(), PcfTerm::var(z));
    return {z, body, m.kind() == PcfTermKind::Abs ? PcfTerm::abs(z, body) : PcfTerm::fix(z, body)};
  }

  std::vector<PcfType> pool_;
  std::map<std::string, std::size_t> failed_;
};

}  // namespace

std::optional<Derivation> prove_one_sided(const std::vector<Formula>& gamma, const PcfTerm& m, const PcfType& a,
                                          std::size_t depth) {
  Sequent goal = one_sided_goal(gamma, m, a);
  FormulaSet g(goal.left);
  const PcfType& t = goal.right.front().type;
  Prover p(g, t);
  return p.prove(g, m, t, depth);
}

}  // namespace twoside::kernel
