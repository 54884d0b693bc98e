// parser.cpp - concrete syntax for the constructor language
#include "twoside/parser.hpp"

#include <sstream>

#include "lexer.hpp"

namespace twoside {

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

const std::set<std::string, std::less<>> kKeywords = {"fun", "fix", "match", "with", "end", "forall", "ctor"};

bool is_keyword(const Token& t) { return t.kind == Tok::Ident && kKeywords.count(t.text) != 0; }

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig, const std::set<std::string>& tops)
      : ts_(src), sig_(sig), tops_(tops) {}

  TokenStream& ts() { return ts_; }

  void finish() {
    if (!ts_.at_end()) ts_.fail("unexpected trailing input");
  }

  // ---- types ----

  Type type() {
    Type lhs = sum();
    if (ts_.accept("->")) return Type::to(lhs, type());
    if (ts_.accept("~>")) return Type::nec(lhs, type());
    return lhs;
  }

  Constraint constraint() {
    Type lhs = type();
    if (ts_.accept("<=")) return {lhs, type()};
    ts_.fail("expected '<='");
  }

  void constraint_into(ConstraintSet& out) {
    Type lhs = type();
    if (ts_.accept("<=")) {
      out.add({lhs, type()});
    } else if (ts_.accept("==")) {
      Type rhs = type();
      out.add({lhs, rhs});
      out.add({rhs, lhs});
    } else {
      ts_.fail("expected '<=' or '=='");
    }
  }

  ConstraintSet constraint_list(std::string_view close) {
    ConstraintSet out;
    if (ts_.is(close)) return out;
    constraint_into(out);
    while (ts_.accept(",") || ts_.accept(";")) {
      if (ts_.is(close)) break;
      constraint_into(out);
    }
    return out;
  }

  Scheme scheme() {
    const Token& start = ts_.peek();
    Scheme s;
    if (ts_.accept("forall")) {
      while (ts_.peek().kind == Tok::Ident && !is_keyword(ts_.peek())) s.vars.push_back(ts_.next().text);
      ts_.expect(".");
    }
    if (ts_.accept("{")) {
      s.constraints = constraint_list("}");
      ts_.expect("}");
      ts_.expect("=>");
    }
    s.body = type();
    auto free = scheme_free_vars(s);
    if (!free.empty()) {
      ts_.fail_at(start, "scheme is not closed: type variable '" + *free.begin() + "' is not quantified");
    }
    return s;
  }

  // ---- terms ----

  Term term() {
    if (ts_.accept("fun")) {
      std::vector<std::string> binders;
      while (ts_.peek().kind == Tok::Ident && !is_keyword(ts_.peek())) binders.push_back(ts_.next().text);
      if (binders.empty()) ts_.fail("expected a binder after 'fun'");
      ts_.expect("->");
      for (const auto& b : binders) bound_.push_back(b);
      Term body = term();
      bound_.resize(bound_.size() - binders.size());
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::abs(*it, body);
      return body;
    }
    if (ts_.accept("fix")) {
      std::string f = ident("expected a binder after 'fix'");
      ts_.expect("->");
      bound_.push_back(f);
      Term body = term();
      bound_.pop_back();
      return Term::fix(f, body);
    }
    Term head = app();
    if (ts_.is("::")) {
      const Token& at = ts_.next();
      Term tail = term();
      return make_ctor(at, "Cons", {head, tail});
    }
    return head;
  }

 private:
  Type sum() {
    const Token& at = ts_.peek();
    Type t = cons_type();
    while (ts_.accept("+")) {
      Type u = cons_type();
      if (!t.is_sum() || !u.is_sum()) ts_.fail_at(at, "operands of '+' must be constructor types");
      std::vector<Summand> ss = t.summands();
      ss.insert(ss.end(), u.summands().begin(), u.summands().end());
      try {
        t = Type::sum(std::move(ss));
      } catch (const std::invalid_argument& e) {
        ts_.fail_at(at, e.what());
      }
    }
    return t;
  }

  Type cons_type() {
    Type h = prod_type();
    if (ts_.is("::")) {
      const Token& at = ts_.next();
      Type tl = cons_type();
      return ctor_type(at, "Cons", {h, tl});
    }
    return h;
  }

  Type prod_type() {
    Type a = atom_type();
    if (ts_.is("*")) {
      const Token& at = ts_.next();
      Type b = prod_type();
      return ctor_type(at, std::string(kPairCtor), {a, b});
    }
    return a;
  }

  Type atom_type() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Upper) {
      ts_.next();
      if (t.text == "Ok") return Type::ok();
      if (t.text == "Empty") return Type::empty();
      std::vector<Type> args;
      if (adjacent_paren(t) && ts_.accept("(")) {
        if (!ts_.is(")")) {
          args.push_back(type());
          while (ts_.accept(",")) args.push_back(type());
        }
        ts_.expect(")");
      }
      return ctor_type(t, t.text, std::move(args));
    }
    if (t.kind == Tok::Ident && !is_keyword(t)) {
      ts_.next();
      return Type::var(t.text);
    }
    if (ts_.is("[")) {
      ts_.next();
      ts_.expect("]");
      return ctor_type(t, "Nil", {});
    }
    if (ts_.accept("(")) {
      Type inner = type();
      ts_.expect(")");
      return inner;
    }
    ts_.fail("expected a type");
  }

  Type ctor_type(const Token& at, const std::string& name, std::vector<Type> args) {
    check_arity(at, name, args.size());
    return Type::ctor(name, std::move(args));
  }

  void check_arity(const Token& at, const std::string& name, std::size_t n) {
    auto ar = sig_.arity(name);
    if (!ar) ts_.fail_at(at, "unknown constructor '" + name + "'");
    if (*ar != n) {
      ts_.fail_at(at, "constructor '" + name + "' expects " + std::to_string(*ar) + " arguments, got " +
                          std::to_string(n));
    }
  }

  // `C(` with no space opens an argument list; `C (x)` applies C to x.
  bool adjacent_paren(const Token& ctor) const {
    const Token& n = ts_.peek();
    return n.kind == Tok::Symbol && n.text == "(" && n.line == ctor.line &&
           n.column == ctor.column + static_cast<int>(ctor.text.size());
  }

  std::string ident(const std::string& msg) {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident || is_keyword(t)) ts_.fail(msg);
    return ts_.next().text;
  }

  Term make_ctor(const Token& at, const std::string& name, std::vector<Term> args) {
    check_arity(at, name, args.size());
    return Term::ctor(name, std::move(args));
  }

  bool starts_atom() const {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Upper) return true;
    if (t.kind == Tok::Ident) return !is_keyword(t) || t.text == "match";
    return t.kind == Tok::Symbol && (t.text == "(" || t.text == "[");
  }

  Term app() {
    Term f = atom();
    while (starts_atom()) f = Term::app(f, atom());
    return f;
  }

  bool is_bound(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  Term atom() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Ident && t.text == "match") return match();
    if (t.kind == Tok::Ident && !is_keyword(t)) {
      ts_.next();
      if (!is_bound(t.text) && tops_.count(t.text)) return Term::top(t.text);
      return Term::local(t.text);
    }
    if (t.kind == Tok::Upper) {
      ts_.next();
      std::vector<Term> args;
      if (adjacent_paren(t) && ts_.accept("(")) {
        if (!ts_.is(")")) {
          args.push_back(term());
          while (ts_.accept(",")) args.push_back(term());
        }
        ts_.expect(")");
      }
      return make_ctor(t, t.text, std::move(args));
    }
    if (ts_.is("[")) {
      ts_.next();
      ts_.expect("]");
      return make_ctor(t, "Nil", {});
    }
    if (ts_.accept("(")) {
      Term a = term();
      if (ts_.accept(",")) {
        Term b = term();
        ts_.expect(")");
        return make_ctor(t, std::string(kPairCtor), {a, b});
      }
      ts_.expect(")");
      return a;
    }
    ts_.fail("expected a term");
  }

  Pattern pattern() {
    const Token& t = ts_.peek();
    Pattern p;
    if (t.kind == Tok::Upper) {
      ts_.next();
      p.ctor = t.text;
      if (adjacent_paren(t) && ts_.accept("(")) {
        if (!ts_.is(")")) {
          p.vars.push_back(ident("expected a pattern variable"));
          while (ts_.accept(",")) p.vars.push_back(ident("expected a pattern variable"));
        }
        ts_.expect(")");
      }
    } else if (ts_.accept("[")) {
      ts_.expect("]");
      p.ctor = "Nil";
    } else if (ts_.accept("(")) {
      p.ctor = std::string(kPairCtor);
      p.vars.push_back(ident("expected a pattern variable"));
      ts_.expect(",");
      p.vars.push_back(ident("expected a pattern variable"));
      ts_.expect(")");
    } else {
      std::string x = ident("expected a pattern");
      ts_.expect("::");
      p.ctor = "Cons";
      p.vars = {x, ident("expected a pattern variable")};
    }
    check_arity(t, p.ctor, p.vars.size());
    return p;
  }

  Term match() {
    const Token& at = ts_.next();
    Term scrut = term();
    ts_.expect("with");
    std::vector<Branch> branches;
    while (ts_.accept("|")) {
      Pattern p = pattern();
      ts_.expect("->");
      for (const auto& v : p.vars) bound_.push_back(v);
      Term body = term();
      bound_.resize(bound_.size() - p.vars.size());
      branches.push_back(Branch{std::move(p), std::move(body)});
    }
    ts_.expect("end");
    try {
      return Term::match(scrut, std::move(branches));
    } catch (const std::invalid_argument& e) {
      ts_.fail_at(at, e.what());
    }
  }

  TokenStream ts_;
  const Signature& sig_;
  const std::set<std::string>& tops_;
  std::vector<std::string> bound_;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig, const std::set<std::string>& tops) {
  Parser p(text, sig, tops);
  Term t = p.term();
  p.finish();
  return t;
}

Type parse_type(std::string_view text, const Signature& sig) {
  Parser p(text, sig, {});
  Type t = p.type();
  p.finish();
  return t;
}

Scheme parse_scheme(std::string_view text, const Signature& sig) {
  Parser p(text, sig, {});
  Scheme s = p.scheme();
  p.finish();
  return s;
}

Constraint parse_constraint(std::string_view text, const Signature& sig) {
  Parser p(text, sig, {});
  Constraint c = p.constraint();
  p.finish();
  return c;
}

ConstraintSet parse_constraints(std::string_view text, const Signature& sig) {
  Parser p(text, sig, {});
  bool braced = p.ts().accept("{");
  ConstraintSet out = p.constraint_list(braced ? "}" : "");
  if (braced) p.ts().expect("}");
  p.finish();
  return out;
}

std::vector<std::pair<std::string, Type>> parse_bindings(std::string_view text, const Signature& sig) {
  Parser p(text, sig, {});
  auto& ts = p.ts();
  bool braced = ts.accept("{");
  std::vector<std::pair<std::string, Type>> out;
  while (!ts.at_end() && !ts.is("}")) {
    const Token& t = ts.peek();
    if (t.kind != Tok::Ident || is_keyword(t)) ts.fail("expected a variable");
    std::string name = ts.next().text;
    ts.expect(":");
    out.emplace_back(name, p.type());
    if (!ts.accept(",")) break;
  }
  if (braced) ts.expect("}");
  p.finish();
  return out;
}

SourceModule parse_module(std::string_view text) {
  SourceModule out;
  struct PendingScheme {
    Token at;
    std::string name;
    Scheme scheme;
  };
  std::vector<PendingScheme> pending;
  std::vector<Token> def_tokens;
  Parser p(text, out.signature, {});
  auto& ts = p.ts();
  while (!ts.at_end()) {
    const Token& head = ts.peek();
    if (head.kind == Tok::Ident && head.text == "ctor") {
      ts.next();
      const Token& name = ts.peek();
      if (name.kind != Tok::Upper) ts.fail("expected a constructor name");
      ts.next();
      const Token& ar = ts.peek();
      if (ar.kind != Tok::Number) ts.fail("expected an arity");
      ts.next();
      try {
        out.signature.add(name.text, std::stoul(ar.text));
      } catch (const std::invalid_argument& e) {
        ts.fail_at(name, e.what());
      }
      ts.expect(";");
      continue;
    }
    if (head.kind != Tok::Ident || is_keyword(head)) ts.fail("expected a declaration");
    Token name = ts.next();
    if (ts.accept(":")) {
      pending.push_back({name, name.text, p.scheme()});
    } else if (ts.accept("=")) {
      Term body = p.term();
      try {
        out.module.define(name.text, body);
      } catch (const std::invalid_argument& e) {
        ts.fail_at(name, e.what());
      }
      def_tokens.push_back(name);
    } else {
      ts.fail("expected ':' or '='");
    }
    ts.expect(";");
  }
  std::map<std::string, Term> tops;
  for (const auto& d : out.module.definitions()) tops.emplace(d.name, Term::top(d.name));
  TopModule resolved;
  for (std::size_t i = 0; i < out.module.definitions().size(); ++i) {
    const auto& d = out.module.definitions()[i];
    Term body = substitute(d.body, tops);
    if (!body.free_var_list().empty()) {
      throw ParseError("unbound variable '" + body.free_var_list().front() + "' in definition of '" +
                           d.name + "'",
                       def_tokens[i].line, def_tokens[i].column);
    }
    resolved.define(d.name, body);
  }
  out.module = std::move(resolved);
  for (auto& ps : pending) {
    if (!out.module.lookup(ps.name)) {
      throw ParseError("scheme declared for undefined identifier '" + ps.name + "'", ps.at.line, ps.at.column);
    }
    out.schemes[ps.name].push_back(std::move(ps.scheme));
  }
  return out;
}

// ---- printing ----

namespace {

enum TypePrec { kArrow = 0, kSum = 1, kCons = 2, kProd = 3, kAtom = 4 };

void print_type_at(std::ostream& os, const Type& t, int prec);

void print_summand(std::ostream& os, const Summand& s, int prec) {
  if (s.ctor == "Nil" && s.args.empty()) {
    os << "[]";
    return;
  }
  if (s.ctor == "Cons" && s.args.size() == 2) {
    if (prec > kCons) os << "(";
    print_type_at(os, s.args[0], kProd);
    os << " :: ";
    print_type_at(os, s.args[1], kCons);
    if (prec > kCons) os << ")";
    return;
  }
  if (s.ctor == kPairCtor && s.args.size() == 2) {
    if (prec > kProd) os << "(";
    print_type_at(os, s.args[0], kAtom);
    os << " * ";
    print_type_at(os, s.args[1], kProd);
    if (prec > kProd) os << ")";
    return;
  }
  os << s.ctor;
  if (!s.args.empty()) {
    os << "(";
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      if (i) os << ", ";
      print_type_at(os, s.args[i], kArrow);
    }
    os << ")";
  }
}

void print_type_at(std::ostream& os, const Type& t, int prec) {
  switch (t.kind()) {
    case TypeKind::Ok: os << "Ok"; return;
    case TypeKind::Var: os << t.name(); return;
    case TypeKind::Sum: {
      const auto& ss = t.summands();
      if (ss.empty()) {
        os << "Empty";
        return;
      }
      if (ss.size() == 1) {
        print_summand(os, ss[0], prec);
        return;
      }
      if (prec > kSum) os << "(";
      for (std::size_t i = 0; i < ss.size(); ++i) {
        if (i) os << " + ";
        print_summand(os, ss[i], kAtom);
      }
      if (prec > kSum) os << ")";
      return;
    }
    case TypeKind::To:
    case TypeKind::Nec:
      if (prec > kArrow) os << "(";
      print_type_at(os, t.dom(), kProd);
      os << (t.is_to() ? " -> " : " ~> ");
      print_type_at(os, t.cod(), kArrow);
      if (prec > kArrow) os << ")";
      return;
  }
}

enum TermPrec { kBinder = 0, kConsT = 1, kApp = 2, kAtomT = 3 };

void print_term_at(std::ostream& os, const Term& t, int prec) {
  switch (t.kind()) {
    case TermKind::Local:
    case TermKind::Top: os << t.name(); return;
    case TermKind::Ctor: {
      const auto& args = t.args();
      if (t.name() == "Nil" && args.empty()) {
        os << "[]";
        return;
      }
      if (t.name() == "Cons" && args.size() == 2) {
        if (prec > kConsT) os << "(";
        print_term_at(os, args[0], kApp);
        os << " :: ";
        print_term_at(os, args[1], kConsT);
        if (prec > kConsT) os << ")";
        return;
      }
      if (t.name() == kPairCtor && args.size() == 2) {
        os << "(";
        print_term_at(os, args[0], kBinder);
        os << ", ";
        print_term_at(os, args[1], kBinder);
        os << ")";
        return;
      }
      os << t.name();
      if (!args.empty()) {
        os << "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) os << ", ";
          print_term_at(os, args[i], kBinder);
        }
        os << ")";
      }
      return;
    }
    case TermKind::App:
      if (prec > kApp) os << "(";
      print_term_at(os, t.fn(), kApp);
      os << " ";
      print_term_at(os, t.arg(), kAtomT);
      if (prec > kApp) os << ")";
      return;
    case TermKind::Abs:
    case TermKind::Fix:
      if (prec > kBinder) os << "(";
      os << (t.kind() == TermKind::Abs ? "fun " : "fix ") << t.name() << " -> ";
      print_term_at(os, t.body(), kBinder);
      if (prec > kBinder) os << ")";
      return;
    case TermKind::Match:
      os << "match ";
      print_term_at(os, t.scrutinee(), kBinder);
      os << " with";
      for (const auto& b : t.branches()) {
        os << " | ";
        const auto& p = b.pattern;
        if (p.ctor == "Nil" && p.vars.empty()) {
          os << "[]";
        } else if (p.ctor == "Cons" && p.vars.size() == 2) {
          os << p.vars[0] << " :: " << p.vars[1];
        } else if (p.ctor == kPairCtor && p.vars.size() == 2) {
          os << "(" << p.vars[0] << ", " << p.vars[1] << ")";
        } else {
          os << p.ctor;
          if (!p.vars.empty()) {
            os << "(";
            for (std::size_t i = 0; i < p.vars.size(); ++i) os << (i ? ", " : "") << p.vars[i];
            os << ")";
          }
        }
        os << " -> ";
        print_term_at(os, b.body, kBinder);
      }
      os << " end";
      return;
  }
}

}  // namespace

std::string print_type(const Type& t) {
  std::ostringstream os;
  print_type_at(os, t, kArrow);
  return os.str();
}

std::string print_term(const Term& t) {
  std::ostringstream os;
  print_term_at(os, t, kBinder);
  return os.str();
}

std::string print_constraint(const Constraint& c) { return print_type(c.lhs) + " <= " + print_type(c.rhs); }

std::string print_constraints(const ConstraintSet& cs) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : cs) {
    if (!first) out += ", ";
    first = false;
    out += print_constraint(c);
  }
  return out + "}";
}

std::string print_scheme(const Scheme& s) {
  std::string out;
  if (!s.vars.empty()) {
    out = "forall";
    for (const auto& v : s.vars) out += " " + v;
    out += ". ";
  }
  if (!s.vars.empty() || !s.constraints.empty()) out += print_constraints(s.constraints) + " => ";
  return out + print_type(s.body);
}

std::string print_module(const SourceModule& m) {
  std::ostringstream os;
  const auto standard = Signature::standard();
  for (const auto& [name, arity] : m.signature.entries()) {
    if (standard.arity(name) != arity) os << "ctor " << name << " " << arity << ";\n";
  }
  for (const auto& d : m.module.definitions()) {
    auto it = m.schemes.find(d.name);
    if (it != m.schemes.end())
      for (const auto& s : it->second) os << d.name << " : " << print_scheme(s) << ";\n";
    os << d.name << " = " << print_term(d.body) << ";\n";
  }
  return os.str();
}

}  // namespace twoside
