// pcf.cpp - kernel language terms, types, parsing, printing and reduction
#include "twoside/pcf.hpp"

#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "lexer.hpp"

namespace twoside::pcf {

struct PcfTerm::Node {
  PcfTermKind kind;
  std::string name, name2;
  std::vector<PcfTerm> kids;
  std::set<std::string> fv;
  bool value = false;
  std::size_t size = 1;
};

namespace {

PcfTerm::Node base(PcfTermKind k, std::vector<PcfTerm> kids) {
  PcfTerm::Node n;
  n.kind = k;
  for (const auto& c : kids) {
    n.size += c.size();
    n.fv.insert(c.free_vars().begin(), c.free_vars().end());
  }
  n.kids = std::move(kids);
  return n;
}

}  // namespace

PcfTerm PcfTerm::zero() {
  auto n = base(PcfTermKind::Zero, {});
  n.value = true;
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::succ(PcfTerm m) {
  bool num = m.as_numeral().has_value();
  auto n = base(PcfTermKind::Succ, {std::move(m)});
  n.value = num;
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::pred(PcfTerm m) {
  return PcfTerm(std::make_shared<const Node>(base(PcfTermKind::Pred, {std::move(m)})));
}

PcfTerm PcfTerm::ifz(PcfTerm g, PcfTerm t, PcfTerm e) {
  return PcfTerm(std::make_shared<const Node>(base(PcfTermKind::IfZ, {std::move(g), std::move(t), std::move(e)})));
}

PcfTerm PcfTerm::var(std::string name) {
  auto n = base(PcfTermKind::Var, {});
  n.fv.insert(name);
  n.name = std::move(name);
  n.value = true;
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::abs(std::string x, PcfTerm body) {
  auto n = base(PcfTermKind::Abs, {std::move(body)});
  n.fv.erase(x);
  n.name = std::move(x);
  n.value = true;
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::app(PcfTerm fn, PcfTerm arg) {
  return PcfTerm(std::make_shared<const Node>(base(PcfTermKind::App, {std::move(fn), std::move(arg)})));
}

PcfTerm PcfTerm::fix(std::string x, PcfTerm body) {
  auto n = base(PcfTermKind::Fix, {std::move(body)});
  n.fv.erase(x);
  n.name = std::move(x);
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::pair(PcfTerm a, PcfTerm b) {
  bool v = a.is_value() && b.is_value();
  auto n = base(PcfTermKind::Pair, {std::move(a), std::move(b)});
  n.value = v;
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::let(std::string x, std::string y, PcfTerm scrutinee, PcfTerm body) {
  if (x == y) throw std::invalid_argument("let binds the same name twice: " + x);
  std::set<std::string> body_fv = body.free_vars();
  body_fv.erase(x);
  body_fv.erase(y);
  auto n = base(PcfTermKind::Let, {std::move(scrutinee), std::move(body)});
  n.fv = n.kids[0].free_vars();
  n.fv.insert(body_fv.begin(), body_fv.end());
  n.name = std::move(x);
  n.name2 = std::move(y);
  return PcfTerm(std::make_shared<const Node>(std::move(n)));
}

PcfTerm PcfTerm::numeral(std::size_t k) {
  PcfTerm t = zero();
  for (std::size_t i = 0; i < k; ++i) t = succ(t);
  return t;
}

PcfTerm PcfTerm::div() { return fix("x", var("x")); }
PcfTerm PcfTerm::id() { return abs("x", var("x")); }

PcfTermKind PcfTerm::kind() const { return node_->kind; }
const std::string& PcfTerm::name() const { return node_->name; }
const std::string& PcfTerm::name2() const { return node_->name2; }
const PcfTerm& PcfTerm::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t PcfTerm::arity() const { return node_->kids.size(); }
bool PcfTerm::is_value() const { return node_->value; }
std::size_t PcfTerm::size() const { return node_->size; }
const std::set<std::string>& PcfTerm::free_vars() const { return node_->fv; }

std::optional<std::size_t> PcfTerm::as_numeral() const {
  std::size_t k = 0;
  const PcfTerm* t = this;
  while (t->kind() == PcfTermKind::Succ) {
    ++k;
    t = &t->child(0);
  }
  if (t->kind() != PcfTermKind::Zero) return std::nullopt;
  return k;
}

bool operator==(const PcfTerm& a, const PcfTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.name2() != b.name2() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

namespace {

// Printer shared by print_pcf_term and alpha_key; `rename` maps binders.
class TermPrinter {
 public:
  explicit TermPrinter(bool canonical) : canonical_(canonical) {}

  std::string print(const PcfTerm& t, int ctx) {
    switch (t.kind()) {
      case PcfTermKind::Zero: return "0";
      case PcfTermKind::Var: return lookup(t.name());
      case PcfTermKind::Succ:
        if (auto k = t.as_numeral()) return std::to_string(*k);
        return "succ(" + print(t.child(0), 0) + ")";
      case PcfTermKind::Pred: return "pred(" + print(t.child(0), 0) + ")";
      case PcfTermKind::Pair: return "(" + print(t.child(0), 0) + ", " + print(t.child(1), 0) + ")";
      case PcfTermKind::App: {
        std::string s = print(t.child(0), 1) + " " + print(t.child(1), 2);
        return ctx == 2 ? "(" + s + ")" : s;
      }
      case PcfTermKind::Abs:
      case PcfTermKind::Fix: {
        std::string x = bind(t.name());
        std::string s = (t.kind() == PcfTermKind::Abs ? "fun " : "fix ") + x + " -> " + print(t.child(0), 0);
        unbind(t.name());
        return ctx > 0 ? "(" + s + ")" : s;
      }
      case PcfTermKind::Let: {
        std::string m = print(t.child(0), 0);
        std::string x = bind(t.name());
        std::string y = bind(t.name2());
        std::string s = "let (" + x + ", " + y + ") = " + m + " in " + print(t.child(1), 0);
        unbind(t.name2());
        unbind(t.name());
        return ctx > 0 ? "(" + s + ")" : s;
      }
      case PcfTermKind::IfZ: {
        std::string s = "ifz " + print(t.child(0), 0) + " then " + print(t.child(1), 0) + " else " +
                        print(t.child(2), 0);
        return ctx > 0 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

 private:
  std::string lookup(const std::string& x) const {
    auto it = scope_.find(x);
    return it == scope_.end() || it->second.empty() ? x : it->second.back();
  }
  std::string bind(const std::string& x) {
    std::string c = canonical_ ? "%" + std::to_string(depth_++) : x;
    scope_[x].push_back(c);
    return c;
  }
  void unbind(const std::string& x) {
    scope_[x].pop_back();
    if (canonical_) --depth_;
  }

  bool canonical_;
  std::size_t depth_ = 0;
  std::map<std::string, std::vector<std::string>> scope_;
};

std::string fresh_for(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

}  // namespace

std::string print_pcf_term(const PcfTerm& t) { return TermPrinter(false).print(t, 0); }
std::string alpha_key(const PcfTerm& t) { return TermPrinter(true).print(t, 0); }
bool alpha_eq(const PcfTerm& a, const PcfTerm& b) { return a == b || alpha_key(a) == alpha_key(b); }

PcfTerm substitute(const PcfTerm& t, const std::string& x, const PcfTerm& v) {
  if (!t.free_vars().count(x)) return t;
  switch (t.kind()) {
    case PcfTermKind::Var: return v;
    case PcfTermKind::Zero: return t;
    case PcfTermKind::Succ: return PcfTerm::succ(substitute(t.child(0), x, v));
    case PcfTermKind::Pred: return PcfTerm::pred(substitute(t.child(0), x, v));
    case PcfTermKind::IfZ:
      return PcfTerm::ifz(substitute(t.child(0), x, v), substitute(t.child(1), x, v), substitute(t.child(2), x, v));
    case PcfTermKind::App: return PcfTerm::app(substitute(t.child(0), x, v), substitute(t.child(1), x, v));
    case PcfTermKind::Pair: return PcfTerm::pair(substitute(t.child(0), x, v), substitute(t.child(1), x, v));
    case PcfTermKind::Abs:
    case PcfTermKind::Fix: {
      std::string y = t.name();
      PcfTerm body = t.child(0);
      if (v.free_vars().count(y)) {
        std::set<std::string> avoid = v.free_vars();
        avoid.insert(body.free_vars().begin(), body.free_vars().end());
        avoid.insert(x);
        std::string z = fresh_for(y, avoid);
        body = substitute(body, y, PcfTerm::var(z));
        y = z;
      }
      body = substitute(body, x, v);
      return t.kind() == PcfTermKind::Abs ? PcfTerm::abs(y, body) : PcfTerm::fix(y, body);
    }
    case PcfTermKind::Let: {
      std::string y1 = t.name(), y2 = t.name2();
      PcfTerm body = t.child(1);
      PcfTerm scrut = substitute(t.child(0), x, v);
      if (y1 == x || y2 == x) return PcfTerm::let(y1, y2, scrut, body);
      std::set<std::string> avoid = v.free_vars();
      avoid.insert(body.free_vars().begin(), body.free_vars().end());
      avoid.insert({x, y1, y2});
      for (std::string* y : {&y1, &y2}) {
        if (!v.free_vars().count(*y)) continue;
        std::string z = fresh_for(*y, avoid);
        avoid.insert(z);
        body = substitute(body, *y, PcfTerm::var(z));
        *y = z;
      }
      return PcfTerm::let(y1, y2, scrut, substitute(body, x, v));
    }
  }
  return t;
}

struct PcfType::Node {
  PcfTypeKind kind;
  std::string name;
  std::vector<PcfType> kids;
};

namespace {

PcfType::Node tnode(PcfTypeKind k, std::vector<PcfType> kids, std::string name = {}) {
  return PcfType::Node{k, std::move(name), std::move(kids)};
}

}  // namespace

PcfType PcfType::nat() {
  static const PcfType t(std::make_shared<const Node>(tnode(PcfTypeKind::Nat, {})));
  return t;
}
PcfType PcfType::ok() {
  static const PcfType t(std::make_shared<const Node>(tnode(PcfTypeKind::Ok, {})));
  return t;
}
PcfType PcfType::atom(std::string name) {
  return PcfType(std::make_shared<const Node>(tnode(PcfTypeKind::Atom, {}, std::move(name))));
}
PcfType PcfType::prod(PcfType a, PcfType b) {
  return PcfType(std::make_shared<const Node>(tnode(PcfTypeKind::Prod, {std::move(a), std::move(b)})));
}
PcfType PcfType::to(PcfType a, PcfType b) {
  return PcfType(std::make_shared<const Node>(tnode(PcfTypeKind::To, {std::move(a), std::move(b)})));
}
PcfType PcfType::nec(PcfType a, PcfType b) {
  return PcfType(std::make_shared<const Node>(tnode(PcfTypeKind::Nec, {std::move(a), std::move(b)})));
}
PcfType PcfType::comp(PcfType a) {
  if (a.kind() == PcfTypeKind::Comp) return a.left();
  return PcfType(std::make_shared<const Node>(tnode(PcfTypeKind::Comp, {std::move(a)})));
}

PcfTypeKind PcfType::kind() const { return node_->kind; }
const std::string& PcfType::name() const { return node_->name; }
const PcfType& PcfType::left() const { return node_->kids.at(0); }
const PcfType& PcfType::right() const { return node_->kids.at(1); }

bool operator==(const PcfType& a, const PcfType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.node_->kids.size() != b.node_->kids.size()) return false;
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
    if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
  return true;
}

bool operator<(const PcfType& a, const PcfType& b) { return print_pcf_type(a) < print_pcf_type(b); }

PcfType expand_nec(const PcfType& t) {
  switch (t.kind()) {
    case PcfTypeKind::Nat:
    case PcfTypeKind::Ok:
    case PcfTypeKind::Atom: return t;
    case PcfTypeKind::Prod: return PcfType::prod(expand_nec(t.left()), expand_nec(t.right()));
    case PcfTypeKind::To: return PcfType::to(expand_nec(t.left()), expand_nec(t.right()));
    case PcfTypeKind::Nec:
      return PcfType::to(PcfType::comp(expand_nec(t.left())), PcfType::comp(expand_nec(t.right())));
    case PcfTypeKind::Comp: return PcfType::comp(expand_nec(t.left()));
  }
  return t;
}

bool disjoint(const PcfType& a, const PcfType& b) {
  auto shape = [](const PcfType& t) -> int {
    if (t.is(PcfTypeKind::Nat)) return 0;
    if (t.is_arrow()) return 1;
    if (t.is(PcfTypeKind::Prod)) return 2;
    return -1;
  };
  int sa = shape(a), sb = shape(b);
  return sa >= 0 && sb >= 0 && sa != sb;
}

bool finitely_verifiable(const PcfType& t) {
  switch (t.kind()) {
    case PcfTypeKind::Nat:
    case PcfTypeKind::Ok:
    case PcfTypeKind::Atom: return true;
    case PcfTypeKind::Prod: return finitely_verifiable(t.left()) && finitely_verifiable(t.right());
    default: return false;
  }
}

namespace {

// Levels: 0 arrow, 1 product, 2 product right operand, 3 complement operand.
std::string print_type(const PcfType& t, int ctx) {
  switch (t.kind()) {
    case PcfTypeKind::Nat: return "Nat";
    case PcfTypeKind::Ok: return "Ok";
    case PcfTypeKind::Atom: return t.name();
    case PcfTypeKind::Comp: return print_type(t.left(), 3) + "^c";
    case PcfTypeKind::Prod: {
      std::string s = print_type(t.left(), 1) + " * " + print_type(t.right(), 2);
      return ctx >= 2 ? "(" + s + ")" : s;
    }
    case PcfTypeKind::To:
    case PcfTypeKind::Nec: {
      std::string s = print_type(t.left(), 1) + (t.is(PcfTypeKind::To) ? " -> " : " ~> ") + print_type(t.right(), 0);
      return ctx >= 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

using detail::Tok;
using detail::TokenStream;

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"fun", "fix", "let", "in", "ifz", "then", "else", "zero", "succ", "pred"};
  return k;
}

class PcfParser {
 public:
  explicit PcfParser(std::string_view src) : ts_(src) {}

  PcfTerm whole_term() {
    PcfTerm t = term();
    if (!ts_.at_end()) ts_.fail("expected end of term");
    return t;
  }

  PcfType whole_type() {
    PcfType t = type();
    if (!ts_.at_end()) ts_.fail("expected end of type");
    return t;
  }

 private:
  std::string ident() {
    const auto& t = ts_.peek();
    if (t.kind != Tok::Ident || keywords().count(t.text)) ts_.fail("expected a variable");
    return ts_.next().text;
  }

  PcfTerm term() {
    if (ts_.accept("fun")) {
      // Binders are plain names or (x, y) patterns.
      std::vector<std::pair<std::string, std::optional<std::string>>> bs;
      while (!ts_.is("->")) {
        if (ts_.accept("(")) {
          std::string x = ident();
          ts_.expect(",");
          std::string y = ident();
          ts_.expect(")");
          bs.emplace_back(x, y);
        } else {
          bs.emplace_back(ident(), std::nullopt);
        }
      }
      if (bs.empty()) ts_.fail("expected a binder");
      ts_.expect("->");
      PcfTerm body = term();
      for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
        if (!it->second) {
          body = PcfTerm::abs(it->first, body);
          continue;
        }
        std::set<std::string> avoid = body.free_vars();
        avoid.insert({it->first, *it->second});
        std::string z = fresh_for("p", avoid);
        body = PcfTerm::abs(z, PcfTerm::let(it->first, *it->second, PcfTerm::var(z), body));
      }
      return body;
    }
    if (ts_.accept("fix")) {
      std::string x = ident();
      ts_.expect("->");
      return PcfTerm::fix(x, term());
    }
    if (ts_.accept("let")) {
      ts_.expect("(");
      std::string x = ident();
      ts_.expect(",");
      std::string y = ident();
      ts_.expect(")");
      ts_.expect("=");
      PcfTerm m = term();
      ts_.expect("in");
      if (x == y) ts_.fail("let binds the same name twice");
      return PcfTerm::let(x, y, m, term());
    }
    if (ts_.accept("ifz")) {
      PcfTerm g = term();
      ts_.expect("then");
      PcfTerm t = term();
      ts_.expect("else");
      return PcfTerm::ifz(g, t, term());
    }
    PcfTerm t = atom();
    while (starts_atom()) t = PcfTerm::app(t, atom());
    return t;
  }

  bool starts_atom() const {
    const auto& t = ts_.peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Ident) return !keywords().count(t.text) || t.text == "zero" || t.text == "succ" || t.text == "pred";
    return t.kind == Tok::Symbol && t.text == "(";
  }

  PcfTerm atom() {
    const auto& t = ts_.peek();
    if (t.kind == Tok::Number) {
      std::size_t k = std::stoul(ts_.next().text);
      if (k > 100000) ts_.fail("numeral too large");
      return PcfTerm::numeral(k);
    }
    if (ts_.accept("zero")) return PcfTerm::zero();
    if (ts_.accept("succ")) {
      ts_.expect("(");
      PcfTerm m = term();
      ts_.expect(")");
      return PcfTerm::succ(m);
    }
    if (ts_.accept("pred")) {
      ts_.expect("(");
      PcfTerm m = term();
      ts_.expect(")");
      return PcfTerm::pred(m);
    }
    if (ts_.accept("(")) {
      PcfTerm m = term();
      if (ts_.accept(",")) {
        PcfTerm n = term();
        ts_.expect(")");
        return PcfTerm::pair(m, n);
      }
      ts_.expect(")");
      return m;
    }
    return PcfTerm::var(ident());
  }

  PcfType type() {
    PcfType a = product();
    if (ts_.accept("->")) return PcfType::to(a, type());
    if (ts_.accept("~>")) return PcfType::nec(a, type());
    return a;
  }

  PcfType product() {
    PcfType a = postfix();
    while (ts_.accept("*")) a = PcfType::prod(a, postfix());
    return a;
  }

  PcfType postfix() {
    PcfType a = type_atom();
    while (ts_.accept("^c")) a = PcfType::comp(a);
    return a;
  }

  PcfType type_atom() {
    if (ts_.accept("(")) {
      PcfType t = type();
      ts_.expect(")");
      return t;
    }
    const auto& t = ts_.peek();
    if (t.kind != Tok::Upper) ts_.fail("expected a type");
    std::string n = ts_.next().text;
    if (n == "Nat") return PcfType::nat();
    if (n == "Ok") return PcfType::ok();
    return PcfType::atom(n);
  }

  TokenStream ts_;
};

}  // namespace

std::string print_pcf_type(const PcfType& t) { return print_type(t, 0); }
PcfTerm parse_pcf_term(std::string_view text) { return PcfParser(text).whole_term(); }
PcfType parse_pcf_type(std::string_view text) { return PcfParser(text).whole_type(); }

std::string_view to_string(PcfOutcome::Kind k) {
  switch (k) {
    case PcfOutcome::Kind::Value: return "Value";
    case PcfOutcome::Kind::Stuck: return "Stuck";
    case PcfOutcome::Kind::OutOfFuel: return "OutOfFuel";
  }
  return "?";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::OutOfFuel: return "out-of-fuel";
  }
  return "?";
}

namespace {

// What evaluation does next at the root of a non-value term.
struct Redex {
  enum class Kind { Descend, Contract, Stuck } kind;
  std::size_t child = 0;
  std::optional<PcfTerm> result;
  std::string reason;
};

Redex descend(std::size_t i) { return Redex{Redex::Kind::Descend, i, std::nullopt, {}}; }
Redex contract(PcfTerm t) { return Redex{Redex::Kind::Contract, 0, std::move(t), {}}; }
Redex stuck(std::string why) { return Redex{Redex::Kind::Stuck, 0, std::nullopt, std::move(why)}; }

Redex inspect(const PcfTerm& t) {
  switch (t.kind()) {
    case PcfTermKind::Succ:
      if (!t.child(0).is_value()) return descend(0);
      return stuck("succ of a non-numeral value");
    case PcfTermKind::Pred: {
      const PcfTerm& m = t.child(0);
      if (!m.is_value()) return descend(0);
      auto k = m.as_numeral();
      if (!k) return stuck("pred of a non-numeral value");
      return contract(*k == 0 ? PcfTerm::zero() : m.child(0));
    }
    case PcfTermKind::IfZ: {
      const PcfTerm& g = t.child(0);
      if (!g.is_value()) return descend(0);
      auto k = g.as_numeral();
      if (!k) return stuck("ifz guard is not a numeral");
      return contract(*k == 0 ? t.child(1) : t.child(2));
    }
    case PcfTermKind::Pair: return descend(t.child(0).is_value() ? 1 : 0);
    case PcfTermKind::Let: {
      const PcfTerm& m = t.child(0);
      if (!m.is_value()) return descend(0);
      if (m.kind() != PcfTermKind::Pair) return stuck("let scrutinee is not a pair");
      // Simultaneous: rename the second binder's occurrences first when the
      // first value mentions it.
      PcfTerm body = t.child(1);
      std::string y = t.name2();
      if (m.child(0).free_vars().count(y)) {
        std::set<std::string> avoid = body.free_vars();
        avoid.insert(m.child(0).free_vars().begin(), m.child(0).free_vars().end());
        std::string z = fresh_for(y, avoid);
        body = substitute(body, y, PcfTerm::var(z));
        y = z;
      }
      return contract(substitute(substitute(body, t.name(), m.child(0)), y, m.child(1)));
    }
    case PcfTermKind::App: {
      const PcfTerm& f = t.child(0);
      if (!f.is_value()) return descend(0);
      if (f.kind() != PcfTermKind::Abs) return stuck("application of a non-function value");
      if (!t.child(1).is_value()) return descend(1);
      return contract(substitute(f.child(0), f.name(), t.child(1)));
    }
    case PcfTermKind::Fix: return contract(substitute(t.child(0), t.name(), t));
    default: return stuck("free variable");
  }
}

PcfTerm with_child(const PcfTerm& t, std::size_t i, PcfTerm c) {
  switch (t.kind()) {
    case PcfTermKind::Succ: return PcfTerm::succ(std::move(c));
    case PcfTermKind::Pred: return PcfTerm::pred(std::move(c));
    case PcfTermKind::IfZ: return PcfTerm::ifz(std::move(c), t.child(1), t.child(2));
    case PcfTermKind::Pair: return i == 0 ? PcfTerm::pair(std::move(c), t.child(1)) : PcfTerm::pair(t.child(0), std::move(c));
    case PcfTermKind::Let: return PcfTerm::let(t.name(), t.name2(), std::move(c), t.child(1));
    case PcfTermKind::App: return i == 0 ? PcfTerm::app(std::move(c), t.child(1)) : PcfTerm::app(t.child(0), std::move(c));
    default: throw std::logic_error("with_child: no evaluation position");
  }
}

bool member(const PcfTerm& v, const PcfType& a) {
  switch (a.kind()) {
    case PcfTypeKind::Ok: return true;
    case PcfTypeKind::Nat: return v.as_numeral().has_value();
    case PcfTypeKind::Prod:
      return v.kind() == PcfTermKind::Pair && member(v.child(0), a.left()) && member(v.child(1), a.right());
    case PcfTypeKind::Comp: return !member(v, a.left());
    default: throw std::invalid_argument("success_oracle: not a first-order type: " + print_pcf_type(a));
  }
}

void check_first_order(const PcfType& a) {
  switch (a.kind()) {
    case PcfTypeKind::Ok:
    case PcfTypeKind::Nat: return;
    case PcfTypeKind::Prod:
      check_first_order(a.left());
      check_first_order(a.right());
      return;
    case PcfTypeKind::Comp: check_first_order(a.left()); return;
    default: throw std::invalid_argument("success_oracle: not a first-order type: " + print_pcf_type(a));
  }
}

}  // namespace

PcfOutcome pcf_evaluate(const PcfTerm& m, std::size_t fuel) {
  if (!m.is_closed()) throw std::invalid_argument("pcf_evaluate: open term " + print_pcf_term(m));
  // The term is stack[0..] with `focus` plugged into the innermost hole;
  // contexts are not rebuilt per step.
  struct Frame {
    PcfTerm term;
    std::size_t hole;
  };
  std::vector<Frame> stack;
  PcfTerm focus = m;
  auto whole = [&] {
    PcfTerm t = focus;
    for (auto f = stack.rbegin(); f != stack.rend(); ++f) t = with_child(f->term, f->hole, std::move(t));
    return t;
  };
  std::size_t steps = 0;
  for (;;) {
    if (focus.is_value()) {
      if (stack.empty()) return PcfOutcome{PcfOutcome::Kind::Value, focus, {}, steps};
      focus = with_child(stack.back().term, stack.back().hole, std::move(focus));
      stack.pop_back();
      continue;
    }
    Redex r = inspect(focus);
    switch (r.kind) {
      case Redex::Kind::Descend: {
        PcfTerm sub = focus.child(r.child);
        stack.push_back(Frame{std::move(focus), r.child});
        focus = std::move(sub);
        break;
      }
      case Redex::Kind::Stuck: return PcfOutcome{PcfOutcome::Kind::Stuck, whole(), r.reason, steps};
      case Redex::Kind::Contract:
        if (steps == fuel) return PcfOutcome{PcfOutcome::Kind::OutOfFuel, whole(), {}, steps};
        ++steps;
        focus = std::move(*r.result);
        break;
    }
  }
}

Membership success_oracle(const PcfTerm& m, const PcfType& a, std::size_t fuel) {
  check_first_order(a);
  PcfOutcome o = pcf_evaluate(m, fuel);
  switch (o.kind) {
    case PcfOutcome::Kind::Stuck: return Membership::In;
    case PcfOutcome::Kind::OutOfFuel: return Membership::OutOfFuel;
    case PcfOutcome::Kind::Value: return member(o.term, a) ? Membership::In : Membership::Out;
  }
  return Membership::OutOfFuel;
}

}  // namespace twoside::pcf

namespace twoside::pcf {

namespace {

class PcfGenerator {
 public:
  explicit PcfGenerator(std::uint64_t seed) : rng_(seed) {}

  PcfTerm gen(std::size_t size) {
    if (size <= 1) return leaf();
    switch (below(9)) {
      case 0: return PcfTerm::succ(gen(size - 1));
      case 1: return PcfTerm::pred(gen(size - 1));
      case 2: {
        std::size_t g = 1 + below(size / 3 + 1);
        std::size_t rest = size > g + 1 ? size - g - 1 : 2;
        std::size_t t = 1 + below(rest);
        return PcfTerm::ifz(gen(g), gen(t), gen(rest > t ? rest - t : 1));
      }
      case 3:
      case 4: {
        std::string x = fresh("x");
        scope_.push_back(x);
        PcfTerm body = gen(size - 1);
        scope_.pop_back();
        return PcfTerm::abs(x, body);
      }
      case 5: {
        std::size_t f = 1 + below(size - 1);
        return PcfTerm::app(gen(f), gen(size - f > 1 ? size - f - 1 : 1));
      }
      case 6: {
        // fix f -> fun x -> M, the useful shape of recursion.
        std::string f = fresh("f"), x = fresh("x");
        scope_.push_back(f);
        scope_.push_back(x);
        PcfTerm body = gen(size > 2 ? size - 2 : 1);
        scope_.resize(scope_.size() - 2);
        return PcfTerm::fix(f, PcfTerm::abs(x, body));
      }
      case 7: {
        std::size_t a = 1 + below(size - 1);
        return PcfTerm::pair(gen(a), gen(size - a > 1 ? size - a - 1 : 1));
      }
      default: {
        std::size_t s = 1 + below(size - 1);
        PcfTerm scrut = below(100) < 60 ? PcfTerm::pair(gen(s), gen(s)) : gen(s);
        std::string x = fresh("a"), y = fresh("b");
        scope_.push_back(x);
        scope_.push_back(y);
        PcfTerm body = gen(size - s > 1 ? size - s - 1 : 1);
        scope_.resize(scope_.size() - 2);
        return PcfTerm::let(x, y, scrut, body);
      }
    }
  }

 private:
  PcfTerm leaf() {
    if (!scope_.empty() && below(100) < 55) return PcfTerm::var(scope_[below(scope_.size())]);
    switch (below(4)) {
      case 0: return PcfTerm::zero();
      case 1: return PcfTerm::numeral(1 + below(2));
      case 2: return PcfTerm::id();
      default: return PcfTerm::pair(PcfTerm::zero(), PcfTerm::numeral(1));
    }
  }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::string fresh(const char* base) { return base + std::to_string(++counter_); }

  std::mt19937_64 rng_;
  std::vector<std::string> scope_;
  std::size_t counter_ = 0;
};

}  // namespace

PcfTerm gen_pcf_term(std::size_t size, std::uint64_t seed) { return PcfGenerator(seed).gen(size); }

}  // namespace twoside::pcf
