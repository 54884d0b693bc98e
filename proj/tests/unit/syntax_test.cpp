// syntax_test.cpp - values, free variables, substitution, alpha-equivalence
#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "twoside/parser.hpp"
#include "twoside/term.hpp"

namespace twoside {
namespace {

using testing::Rng;

Term T(const std::string& s, const std::set<std::string>& tops = {}) {
  return parse_term(s, Signature::standard(), tops);
}

TEST(IsValue, Examples) {
  EXPECT_TRUE(is_value(T("Nil")));
  EXPECT_FALSE(is_value(T("Cons(Zero, f x)")));
  EXPECT_FALSE(is_value(T("fix f -> f")));
  EXPECT_TRUE(is_value(T("fun x -> x x")));
  EXPECT_TRUE(is_value(T("x")));
}

TEST(FreeVars, Examples) {
  EXPECT_TRUE(free_vars(T("fun x -> f x", {"f"})).empty());
  EXPECT_EQ(free_vars(T("match xs with | Cons(y,ys) -> y end")), std::set<std::string>{"xs"});
  EXPECT_EQ(free_vars(T("x")), std::set<std::string>{"x"});
  EXPECT_EQ(free_vars(T("match y with | Cons(y,ys) -> ys | [] -> z end")), (std::set<std::string>{"y", "z"}));
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(T("y"), {{"y", T("Zero")}}), T("Zero"));
  Term r = substitute(T("fun y -> x"), {{"x", T("y")}});
  ASSERT_EQ(r.kind(), TermKind::Abs);
  EXPECT_NE(r.name(), "y");
  EXPECT_TRUE(alpha_eq(r, T("fun y2 -> y")));
  EXPECT_FALSE(alpha_eq(r, T("fun y -> y")));
}

TEST(Substitute, MatchBranchInstance) {
  const auto& m = testing::prelude();
  const Term& map = *m.module.lookup("map");
  // fix m -> fun f -> fun xs -> match ...
  const Term& match = map.body().body().body();
  ASSERT_EQ(match.kind(), TermKind::Match);
  const Branch& cons = match.branches()[1];
  Term inst = substitute(cons.body, {{"y", T("Zero")}, {"ys", T("[]")}});
  EXPECT_TRUE(alpha_eq(inst, T("f Zero :: m f []")));
}

TEST(AlphaEq, Examples) {
  EXPECT_TRUE(alpha_eq(T("fun x -> x"), T("fun y -> y")));
  EXPECT_FALSE(alpha_eq(T("fun x -> x"), T("fun x -> Zero")));
  Term twice = T("fun f -> fun x -> f (f x)");
  EXPECT_TRUE(alpha_eq(twice, T("fun g -> fun y -> g (g y)")));
  EXPECT_FALSE(alpha_eq(twice, T("fun g -> fun y -> y (g y)")));
  EXPECT_FALSE(alpha_eq(T("fun x -> y"), T("fun y -> y")));
  EXPECT_TRUE(alpha_eq(T("match z with | Cons(a,b) -> b end"), T("match z with | Cons(c,d) -> d end")));
}

// Locally nameless reference: bound occurrences become indices, so
// substitution never needs renaming.
struct Ln {
  char tag;  // v bound, f free, t top, c ctor, a app, l abs, x fix, m match
  std::string name;
  long index = 0;
  std::vector<Ln> kids = {};
  std::vector<std::pair<std::string, std::size_t>> pats = {};

  friend bool operator==(const Ln&, const Ln&) = default;
};

Ln to_ln(const Term& t, std::vector<std::string>& env) {
  switch (t.kind()) {
    case TermKind::Local:
      for (long i = static_cast<long>(env.size()) - 1; i >= 0; --i)
        if (env[static_cast<std::size_t>(i)] == t.name()) return Ln{'v', "", static_cast<long>(env.size()) - 1 - i};
      return Ln{'f', t.name()};
    case TermKind::Top: return Ln{'t', t.name()};
    case TermKind::Ctor: {
      Ln out{'c', t.name()};
      for (const auto& a : t.args()) out.kids.push_back(to_ln(a, env));
      return out;
    }
    case TermKind::App: {
      Ln out{'a', ""};
      out.kids.push_back(to_ln(t.fn(), env));
      out.kids.push_back(to_ln(t.arg(), env));
      return out;
    }
    case TermKind::Abs:
    case TermKind::Fix: {
      Ln out{t.kind() == TermKind::Abs ? 'l' : 'x', ""};
      env.push_back(t.name());
      out.kids.push_back(to_ln(t.body(), env));
      env.pop_back();
      return out;
    }
    case TermKind::Match: {
      Ln out{'m', ""};
      out.kids.push_back(to_ln(t.scrutinee(), env));
      for (const auto& b : t.branches()) {
        out.pats.emplace_back(b.pattern.ctor, b.pattern.vars.size());
        for (const auto& v : b.pattern.vars) env.push_back(v);
        out.kids.push_back(to_ln(b.body, env));
        env.resize(env.size() - b.pattern.vars.size());
      }
      return out;
    }
  }
  return {};
}

Ln to_ln(const Term& t) {
  std::vector<std::string> env;
  return to_ln(t, env);
}

Ln ln_subst(const Ln& t, const std::map<std::string, Ln>& s) {
  if (t.tag == 'f') {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  Ln out = t;
  for (auto& k : out.kids) k = ln_subst(k, s);
  return out;
}

TEST(Substitute, AgreesWithLocallyNamelessReference) {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    Term t = testing::gen_open_term(rng, 5);
    std::map<std::string, Term> s;
    if (rng.chance(70)) s.emplace("x", testing::gen_open_term(rng, 2));
    if (rng.chance(70)) s.emplace("y", testing::gen_open_term(rng, 2));
    std::map<std::string, Ln> ls;
    for (const auto& [k, v] : s) ls.emplace(k, to_ln(v));
    Term r = substitute(t, s);
    EXPECT_EQ(to_ln(r), ln_subst(to_ln(t), ls)) << print_term(t);
  }
}

TEST(Substitute, Properties) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = testing::gen_open_term(rng, 5);
    EXPECT_TRUE(alpha_eq(substitute(t, {}), t));
    // closed value replacements preserve value-hood
    Term v = rng.chance(50) ? T("Zero") : T("fun q -> q");
    Term r = substitute(t, {{"x", v}, {"y", v}, {"z", v}});
    EXPECT_EQ(is_value(r), is_value(t)) << print_term(t);
  }
}

TEST(AlphaEq, AgreesWithLocallyNameless) {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    Term a = testing::gen_open_term(rng, 4);
    Term b = rng.chance(50) ? a : testing::gen_open_term(rng, 4);
    EXPECT_EQ(alpha_eq(a, b), to_ln(a) == to_ln(b));
  }
}

TEST(TypeSubst, Examples) {
  EXPECT_EQ(apply_type_subst(parse_type("a"), {{"a", Type::ok()}}), Type::ok());
  EXPECT_EQ(apply_type_subst(parse_type("a -> b"), {{"a", parse_type("[]")}}), parse_type("[] -> b"));
  const Scheme& map = testing::prelude().schemes.at("map")[0];
  Type la = parse_type("[] + (Ok :: Ok)");
  Type r = apply_type_subst(map.body, {{"la", la}});
  EXPECT_EQ(parse_type(print_type(r)), r);
  EXPECT_EQ(print_type(r), "(a -> b) -> ((Ok :: Ok) + []) -> lb");
}

TEST(TypeSubst, IdentityOnClosedTypes) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Type t = testing::gen_type(rng, 4, {"a"});
    Type closed = apply_type_subst(t, {{"a", Type::ok()}});
    EXPECT_TRUE(free_type_vars(closed).empty());
    EXPECT_EQ(apply_type_subst(closed, {{"a", Type::empty()}, {"b", Type::ok()}}), closed);
  }
}

TEST(Match, RejectsOverlapAndSharedBinders) {
  EXPECT_THROW(Term::match(T("x"), {Branch{Pattern{"Nil", {}}, T("Zero")}, Branch{Pattern{"Nil", {}}, T("Zero")}}),
               std::invalid_argument);
  EXPECT_THROW(Term::match(T("x"), {Branch{Pattern{"Cons", {"a", "b"}}, T("Zero")},
                                    Branch{Pattern{"Pair", {"a", "c"}}, T("Zero")}}),
               std::invalid_argument);
}

TEST(Substitute, PreservesOrthogonality) {
  Term t = T("match w with | Cons(x, y) -> z | Pair(y_1, v) -> z end");
  Term r = substitute(t, {{"z", T("y")}});
  // renaming y must not collide with the other branch's y_1
  EXPECT_TRUE(alpha_eq(r, T("match w with | Cons(a, b) -> y | Pair(c, d) -> y end")));
}

}  // namespace
}  // namespace twoside
