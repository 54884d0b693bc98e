// type.cpp - monotypes, constraints, schemes and signatures
#include "twoside/type.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace twoside {

struct Type::Node {
  TypeKind kind;
  std::string name;
  std::vector<Summand> summands;
  std::vector<Type> kids;  // dom, cod for arrows
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::shared_ptr<const Type::Node> make_ok_node() {
  auto n = std::make_shared<Type::Node>();
  n->kind = TypeKind::Ok;
  n->hash = mix(0, 1);
  return n;
}

const std::shared_ptr<const Type::Node>& ok_node() {
  static const std::shared_ptr<const Type::Node> node = make_ok_node();
  return node;
}

}  // namespace

Type::Type() : node_(ok_node()) {}

Type Type::ok() { return Type(); }

Type Type::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Var;
  n->hash = mix(std::hash<std::string>{}(name), 2);
  n->name = std::move(name);
  return Type(std::move(n));
}

Type Type::sum(std::vector<Summand> summands) {
  std::sort(summands.begin(), summands.end(),
            [](const Summand& a, const Summand& b) { return a.ctor < b.ctor; });
  for (std::size_t i = 1; i < summands.size(); ++i) {
    if (summands[i].ctor == summands[i - 1].ctor) {
      throw std::invalid_argument("duplicate summand head '" + summands[i].ctor + "'");
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Sum;
  std::size_t h = mix(3, summands.size());
  for (const auto& s : summands) {
    h = mix(h, std::hash<std::string>{}(s.ctor));
    for (const auto& a : s.args) {
      h = mix(h, a.hash());
      n->size += a.size();
    }
  }
  n->hash = h;
  n->summands = std::move(summands);
  return Type(std::move(n));
}

Type Type::empty() { return sum({}); }

Type Type::ctor(std::string name, std::vector<Type> args) {
  std::vector<Summand> s;
  s.push_back(Summand{std::move(name), std::move(args)});
  return sum(std::move(s));
}

namespace {

std::shared_ptr<const Type::Node> arrow_node(TypeKind kind, Type dom, Type cod) {
  auto n = std::make_shared<Type::Node>();
  n->kind = kind;
  n->hash = mix(mix(kind == TypeKind::To ? 4 : 5, dom.hash()), cod.hash());
  n->size = 1 + dom.size() + cod.size();
  n->kids = {std::move(dom), std::move(cod)};
  return n;
}

}  // namespace

Type Type::to(Type dom, Type cod) {
  return Type(arrow_node(TypeKind::To, std::move(dom), std::move(cod)));
}

Type Type::nec(Type dom, Type cod) {
  return Type(arrow_node(TypeKind::Nec, std::move(dom), std::move(cod)));
}

TypeKind Type::kind() const { return node_->kind; }
const std::string& Type::name() const { return node_->name; }
const std::vector<Summand>& Type::summands() const { return node_->summands; }
const Type& Type::dom() const { return node_->kids.at(0); }
const Type& Type::cod() const { return node_->kids.at(1); }
std::size_t Type::hash() const { return node_->hash; }
std::size_t Type::size() const { return node_->size; }

const Summand* Type::find(std::string_view ctor) const {
  const auto& ss = node_->summands;
  auto it = std::lower_bound(ss.begin(), ss.end(), ctor,
                             [](const Summand& s, std::string_view c) { return s.ctor < c; });
  if (it == ss.end() || it->ctor != ctor) return nullptr;
  return &*it;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case TypeKind::Ok: return true;
    case TypeKind::Var: return a.node_->name == b.node_->name;
    case TypeKind::Sum: return a.node_->summands == b.node_->summands;
    case TypeKind::To:
    case TypeKind::Nec: return a.node_->kids == b.node_->kids;
  }
  return false;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  switch (a.node_->kind) {
    case TypeKind::Ok: return std::strong_ordering::equal;
    case TypeKind::Var: return a.node_->name <=> b.node_->name;
    case TypeKind::Sum: return a.node_->summands <=> b.node_->summands;
    case TypeKind::To:
    case TypeKind::Nec:
      if (auto c = a.dom() <=> b.dom(); c != 0) return c;
      return a.cod() <=> b.cod();
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Summand& a, const Summand& b) {
  if (auto c = a.ctor <=> b.ctor; c != 0) return c;
  return a.args <=> b.args;
}

std::strong_ordering operator<=>(const Constraint& a, const Constraint& b) {
  if (auto c = a.lhs <=> b.lhs; c != 0) return c;
  return a.rhs <=> b.rhs;
}

Type apply_type_subst(const Type& ty, const TypeSubst& subst) {
  if (subst.empty()) return ty;
  switch (ty.kind()) {
    case TypeKind::Ok: return ty;
    case TypeKind::Var: {
      auto it = subst.find(ty.name());
      return it == subst.end() ? ty : it->second;
    }
    case TypeKind::Sum: {
      std::vector<Summand> ss;
      ss.reserve(ty.summands().size());
      for (const auto& s : ty.summands()) {
        Summand out{s.ctor, {}};
        for (const auto& a : s.args) out.args.push_back(apply_type_subst(a, subst));
        ss.push_back(std::move(out));
      }
      return Type::sum(std::move(ss));
    }
    case TypeKind::To: return Type::to(apply_type_subst(ty.dom(), subst), apply_type_subst(ty.cod(), subst));
    case TypeKind::Nec: return Type::nec(apply_type_subst(ty.dom(), subst), apply_type_subst(ty.cod(), subst));
  }
  return ty;
}

void collect_type_vars(const Type& ty, std::set<std::string>& out) {
  switch (ty.kind()) {
    case TypeKind::Ok: return;
    case TypeKind::Var: out.insert(ty.name()); return;
    case TypeKind::Sum:
      for (const auto& s : ty.summands())
        for (const auto& a : s.args) collect_type_vars(a, out);
      return;
    case TypeKind::To:
    case TypeKind::Nec:
      collect_type_vars(ty.dom(), out);
      collect_type_vars(ty.cod(), out);
      return;
  }
}

std::set<std::string> free_type_vars(const Type& ty) {
  std::set<std::string> out;
  collect_type_vars(ty, out);
  return out;
}

void collect_subterms(const Type& ty, std::vector<Type>& out) {
  out.push_back(ty);
  switch (ty.kind()) {
    case TypeKind::Ok:
    case TypeKind::Var: return;
    case TypeKind::Sum:
      for (const auto& s : ty.summands())
        for (const auto& a : s.args) collect_subterms(a, out);
      return;
    case TypeKind::To:
    case TypeKind::Nec:
      collect_subterms(ty.dom(), out);
      collect_subterms(ty.cod(), out);
      return;
  }
}

bool ConstraintSet::subset_of(const ConstraintSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

ConstraintSet subst_constraints(const ConstraintSet& cs, const TypeSubst& subst) {
  ConstraintSet out;
  for (const auto& c : cs) out.add({apply_type_subst(c.lhs, subst), apply_type_subst(c.rhs, subst)});
  return out;
}

void collect_type_vars(const ConstraintSet& cs, std::set<std::string>& out) {
  for (const auto& c : cs) {
    collect_type_vars(c.lhs, out);
    collect_type_vars(c.rhs, out);
  }
}

std::set<std::string> scheme_free_vars(const Scheme& s) {
  std::set<std::string> vars;
  collect_type_vars(s.body, vars);
  collect_type_vars(s.constraints, vars);
  for (const auto& v : s.vars) vars.erase(v);
  return vars;
}

Signature::Signature() { arities_.emplace(std::string(kPairCtor), 2); }

Signature Signature::standard() {
  Signature s;
  s.add("Zero", 0);
  s.add("Succ", 1);
  s.add("Nil", 0);
  s.add("Cons", 2);
  s.add("True", 0);
  s.add("False", 0);
  return s;
}

void Signature::add(const std::string& name, std::size_t arity) {
  auto [it, inserted] = arities_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw std::invalid_argument("constructor '" + name + "' redeclared with arity " +
                                std::to_string(arity) + " (was " + std::to_string(it->second) + ")");
  }
}

std::optional<std::size_t> Signature::arity(std::string_view name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

void check_type(const Type& ty, const Signature& sig) {
  switch (ty.kind()) {
    case TypeKind::Ok:
    case TypeKind::Var: return;
    case TypeKind::Sum:
      for (const auto& s : ty.summands()) {
        auto ar = sig.arity(s.ctor);
        if (!ar) throw std::invalid_argument("unknown constructor '" + s.ctor + "'");
        if (*ar != s.args.size()) {
          throw std::invalid_argument("constructor '" + s.ctor + "' expects " + std::to_string(*ar) +
                                      " arguments, got " + std::to_string(s.args.size()));
        }
        for (const auto& a : s.args) check_type(a, sig);
      }
      return;
    case TypeKind::To:
    case TypeKind::Nec:
      check_type(ty.dom(), sig);
      check_type(ty.cod(), sig);
      return;
  }
}

}  // namespace twoside
