// term.cpp - constructor-language terms, values and substitution
#include "twoside/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace twoside {

struct Term::Node {
  TermKind kind;
  std::string name;
  std::vector<Term> kids;
  std::vector<Branch> branches;
  std::vector<std::string> fv;  // sorted, unique
  bool value = false;
  std::size_t size = 1;
};

namespace {

using Fv = std::vector<std::string>;

void merge_into(Fv& out, const Fv& in) {
  Fv merged;
  merged.reserve(out.size() + in.size());
  std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(merged));
  out.swap(merged);
}

void erase_name(Fv& fv, const std::string& name) {
  auto it = std::lower_bound(fv.begin(), fv.end(), name);
  if (it != fv.end() && *it == name) fv.erase(it);
}

bool has_name(const Fv& fv, const std::string& name) {
  return std::binary_search(fv.begin(), fv.end(), name);
}

}  // namespace

Term Term::local(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Local;
  n->fv = {name};
  n->name = std::move(name);
  n->value = true;
  return Term(std::move(n));
}

Term Term::top(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Top;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::ctor(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Ctor;
  n->name = std::move(name);
  n->value = true;
  for (const auto& a : args) {
    n->value = n->value && a.is_value();
    n->size += a.size();
    merge_into(n->fv, a.node_->fv);
  }
  n->kids = std::move(args);
  return Term(std::move(n));
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->size = 1 + fn.size() + arg.size();
  n->fv = fn.node_->fv;
  merge_into(n->fv, arg.node_->fv);
  n->kids = {std::move(fn), std::move(arg)};
  return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Abs;
  n->size = 1 + body.size();
  n->fv = body.node_->fv;
  erase_name(n->fv, binder);
  n->name = std::move(binder);
  n->value = true;
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term Term::fix(std::string binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Fix;
  n->size = 1 + body.size();
  n->fv = body.node_->fv;
  erase_name(n->fv, binder);
  n->name = std::move(binder);
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term Term::match(Term scrutinee, std::vector<Branch> branches) {
  std::set<std::string> heads;
  std::set<std::string> bound;
  for (const auto& b : branches) {
    if (!heads.insert(b.pattern.ctor).second) {
      throw std::invalid_argument("overlapping patterns: constructor '" + b.pattern.ctor +
                                  "' heads two alternatives");
    }
    for (const auto& v : b.pattern.vars) {
      if (!bound.insert(v).second) {
        throw std::invalid_argument("pattern variable '" + v + "' bound twice in one match");
      }
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Match;
  n->size = 1 + scrutinee.size();
  n->fv = scrutinee.node_->fv;
  for (const auto& b : branches) {
    n->size += b.body.size();
    Fv fv = b.body.node_->fv;
    for (const auto& v : b.pattern.vars) erase_name(fv, v);
    merge_into(n->fv, fv);
  }
  n->kids = {std::move(scrutinee)};
  n->branches = std::move(branches);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->kids; }
const Term& Term::fn() const { return node_->kids.at(0); }
const Term& Term::arg() const { return node_->kids.at(1); }
const Term& Term::body() const { return node_->kids.at(0); }
const Term& Term::scrutinee() const { return node_->kids.at(0); }
const std::vector<Branch>& Term::branches() const { return node_->branches; }
bool Term::is_value() const { return node_->value; }
std::size_t Term::size() const { return node_->size; }
const std::vector<std::string>& Term::free_var_list() const { return node_->fv; }
bool Term::has_free(const std::string& name) const { return has_name(node_->fv, name); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.name == y.name && x.kids == y.kids &&
         x.branches == y.branches;
}

std::set<std::string> free_vars(const Term& t) {
  const auto& fv = t.free_var_list();
  return {fv.begin(), fv.end()};
}

bool is_closed(const Term& t) { return t.free_var_list().empty(); }

namespace {

void collect_tops(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Local: return;
    case TermKind::Top: out.insert(t.name()); return;
    case TermKind::Ctor:
      for (const auto& a : t.args()) collect_tops(a, out);
      return;
    case TermKind::App:
      collect_tops(t.fn(), out);
      collect_tops(t.arg(), out);
      return;
    case TermKind::Abs:
    case TermKind::Fix: collect_tops(t.body(), out); return;
    case TermKind::Match:
      collect_tops(t.scrutinee(), out);
      for (const auto& b : t.branches()) collect_tops(b.body, out);
      return;
  }
}

}  // namespace

std::set<std::string> top_ids(const Term& t) {
  std::set<std::string> out;
  collect_tops(t, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() &&
      std::all_of(stem.begin() + static_cast<long>(us) + 1, stem.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    stem.resize(us);
  }
  for (std::size_t k = 1;; ++k) {
    std::string cand = stem + "_" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

namespace {

class Substituter {
 public:
  explicit Substituter(const std::map<std::string, Term>& s) {
    for (const auto& [k, v] : s) {
      for (const auto& x : v.free_var_list()) range_fv_.insert(x);
    }
  }

  Term run(const Term& t, const std::map<std::string, Term>& s) const {
    if (!touched(t, s)) return t;
    switch (t.kind()) {
      case TermKind::Local: {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
      }
      case TermKind::Top: return t;
      case TermKind::Ctor: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(run(a, s));
        return Term::ctor(t.name(), std::move(args));
      }
      case TermKind::App: return Term::app(run(t.fn(), s), run(t.arg(), s));
      case TermKind::Abs:
      case TermKind::Fix: {
        std::map<std::string, Term> inner = s;
        std::vector<std::string> binders{t.name()};
        std::set<std::string> taken;
        auto names = rebind(binders, t.body(), inner, taken);
        Term body = run(t.body(), inner);
        return t.kind() == TermKind::Abs ? Term::abs(names[0], std::move(body))
                                         : Term::fix(names[0], std::move(body));
      }
      case TermKind::Match: {
        std::vector<Branch> branches;
        std::set<std::string> taken;
        for (const auto& b : t.branches()) taken.insert(b.pattern.vars.begin(), b.pattern.vars.end());
        for (const auto& b : t.branches()) {
          std::map<std::string, Term> inner = s;
          auto names = rebind(b.pattern.vars, b.body, inner, taken);
          branches.push_back(Branch{Pattern{b.pattern.ctor, std::move(names)}, run(b.body, inner)});
        }
        return Term::match(run(t.scrutinee(), s), std::move(branches));
      }
    }
    return t;
  }

 private:
  static bool touched(const Term& t, const std::map<std::string, Term>& s) {
    for (const auto& [k, v] : s)
      if (t.has_free(k)) return true;
    return false;
  }

  // Drops shadowed keys and renames binders that would capture a free
  // variable of the range.
  std::vector<std::string> rebind(const std::vector<std::string>& binders, const Term& body,
                                  std::map<std::string, Term>& inner,
                                  std::set<std::string>& taken) const {
    for (const auto& b : binders) inner.erase(b);
    std::vector<std::string> names = binders;
    if (inner.empty()) return names;
    std::set<std::string> avoid = range_fv_;
    for (const auto& x : body.free_var_list()) avoid.insert(x);
    for (const auto& [k, v] : inner) avoid.insert(k);
    for (const auto& b : binders) avoid.insert(b);
    avoid.insert(taken.begin(), taken.end());
    for (auto& n : names) {
      if (!range_fv_.count(n)) continue;
      std::string fresh = fresh_name(n, avoid);
      avoid.insert(fresh);
      taken.insert(fresh);
      inner.insert_or_assign(n, Term::local(fresh));
      n = fresh;
    }
    return names;
  }

  std::set<std::string> range_fv_;
};

struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> stack;

  // Innermost binding index for a name on the given side, or -1.
  long lookup(const std::string& name, bool left) const {
    for (long i = static_cast<long>(stack.size()) - 1; i >= 0; --i) {
      const auto& p = stack[static_cast<std::size_t>(i)];
      if ((left ? p.first : p.second) == name) return i;
    }
    return -1;
  }
};

bool alpha(const Term& a, const Term& b, AlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Local: {
      long i = env.lookup(a.name(), true);
      long j = env.lookup(b.name(), false);
      if (i != j) return false;
      return i >= 0 || a.name() == b.name();
    }
    case TermKind::Top: return a.name() == b.name();
    case TermKind::Ctor: {
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha(a.args()[i], b.args()[i], env)) return false;
      return true;
    }
    case TermKind::App: return alpha(a.fn(), b.fn(), env) && alpha(a.arg(), b.arg(), env);
    case TermKind::Abs:
    case TermKind::Fix: {
      env.stack.emplace_back(a.name(), b.name());
      bool ok = alpha(a.body(), b.body(), env);
      env.stack.pop_back();
      return ok;
    }
    case TermKind::Match: {
      if (a.branches().size() != b.branches().size()) return false;
      if (!alpha(a.scrutinee(), b.scrutinee(), env)) return false;
      for (std::size_t i = 0; i < a.branches().size(); ++i) {
        const auto& x = a.branches()[i];
        const auto& y = b.branches()[i];
        if (x.pattern.ctor != y.pattern.ctor || x.pattern.vars.size() != y.pattern.vars.size()) {
          return false;
        }
        for (std::size_t k = 0; k < x.pattern.vars.size(); ++k)
          env.stack.emplace_back(x.pattern.vars[k], y.pattern.vars[k]);
        bool ok = alpha(x.body, y.body, env);
        env.stack.resize(env.stack.size() - x.pattern.vars.size());
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

Term substitute(const Term& t, const std::map<std::string, Term>& subst) {
  if (subst.empty()) return t;
  Substituter s(subst);
  return s.run(t, subst);
}

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  AlphaEnv env;
  return alpha(a, b, env);
}

Term pair_term(Term a, Term b) { return Term::ctor(std::string(kPairCtor), {std::move(a), std::move(b)}); }

void check_term(const Term& t, const Signature& sig) {
  auto check_arity = [&](const std::string& c, std::size_t n) {
    auto ar = sig.arity(c);
    if (!ar) throw std::invalid_argument("unknown constructor '" + c + "'");
    if (*ar != n) {
      throw std::invalid_argument("constructor '" + c + "' expects " + std::to_string(*ar) +
                                  " arguments, got " + std::to_string(n));
    }
  };
  switch (t.kind()) {
    case TermKind::Local:
    case TermKind::Top: return;
    case TermKind::Ctor:
      check_arity(t.name(), t.args().size());
      for (const auto& a : t.args()) check_term(a, sig);
      return;
    case TermKind::App:
      check_term(t.fn(), sig);
      check_term(t.arg(), sig);
      return;
    case TermKind::Abs:
    case TermKind::Fix: check_term(t.body(), sig); return;
    case TermKind::Match:
      check_term(t.scrutinee(), sig);
      for (const auto& b : t.branches()) {
        check_arity(b.pattern.ctor, b.pattern.vars.size());
        check_term(b.body, sig);
      }
      return;
  }
}

void TopModule::define(std::string name, Term body) {
  if (index_.count(name)) throw std::invalid_argument("duplicate definition of '" + name + "'");
  index_.emplace(name, defs_.size());
  defs_.push_back(Definition{std::move(name), std::move(body)});
}

const Term* TopModule::lookup(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &defs_[it->second].body;
}

}  // namespace twoside
