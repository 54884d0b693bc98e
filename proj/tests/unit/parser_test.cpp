// parser_test.cpp - concrete syntax, printing and round trips
#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "twoside/parser.hpp"

namespace twoside {
namespace {

using testing::Rng;

TEST(ParseTerm, HeadBody) {
  Term t = parse_term("fun xs -> match xs with | Cons(y,ys) -> y end");
  ASSERT_EQ(t.kind(), TermKind::Abs);
  EXPECT_EQ(t.body().kind(), TermKind::Match);
  EXPECT_TRUE(alpha_eq(t, *testing::prelude().module.lookup("head")));
}

TEST(ParseTerm, Errors) {
  EXPECT_THROW((void)parse_term("Cons(Zero,"), ParseError);
  try {
    (void)parse_term("match x with | Cons(y,ys) -> y | Cons(a,b) -> a end");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("overlapping"), std::string::npos);
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 1);
  }
  EXPECT_THROW((void)parse_term("Cons(Zero)"), ParseError);
  EXPECT_THROW((void)parse_term("Foo"), ParseError);
  try {
    (void)parse_term("fun x ->\n  Cons(x, ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ParseType, Examples) {
  Type t = parse_type("(a :: Ok) ~> a");
  ASSERT_TRUE(t.is_nec());
  EXPECT_EQ(t.dom(), Type::ctor("Cons", {Type::var("a"), Type::ok()}));
  EXPECT_EQ(t.cod(), Type::var("a"));
  EXPECT_EQ(parse_type("a -> b ~> c"), Type::to(Type::var("a"), Type::nec(Type::var("b"), Type::var("c"))));
  EXPECT_EQ(parse_type("a * b"), Type::ctor("Pair", {Type::var("a"), Type::var("b")}));
  EXPECT_THROW((void)parse_type("[] + []"), ParseError);
  EXPECT_THROW((void)parse_type("a + []"), ParseError);
}

TEST(ParseScheme, Examples) {
  Scheme s = parse_scheme("forall a. {} => a -> a");
  EXPECT_EQ(s.vars, std::vector<std::string>{"a"});
  EXPECT_TRUE(s.constraints.empty());
  EXPECT_EQ(s.body, Type::to(Type::var("a"), Type::var("a")));
  EXPECT_THROW((void)parse_scheme("forall a. {} => a -> b"), ParseError);
  Scheme eq = parse_scheme("forall l. {l == [] + (Ok :: l)} => l");
  EXPECT_EQ(eq.constraints.size(), 2u);
}

TEST(ParseModule, Examples) {
  const auto& m = testing::prelude();
  EXPECT_EQ(m.module.definitions().size(), 2u);
  EXPECT_EQ(m.schemes.at("map").size(), 2u);
  EXPECT_THROW((void)parse_module("f = Zero; f = Nil;"), ParseError);
  EXPECT_TRUE(parse_module("").module.empty());
  EXPECT_TRUE(parse_module("-- only a comment\n").module.empty());
  EXPECT_THROW((void)parse_module("g : Ok; f = Zero;"), ParseError);
  EXPECT_THROW((void)parse_module("f = x;"), ParseError);
  SourceModule custom = parse_module("ctor Leaf 0; ctor Node 3; t = Node(Leaf, Zero, Leaf);");
  EXPECT_EQ(custom.signature.arity("Node"), 3u);
  EXPECT_THROW((void)parse_module("ctor Cons 3;"), ParseError);
}

TEST(ParseModule, RecursiveReferencesResolveToTopLevel) {
  SourceModule m = parse_module("loop = fun x -> loop x; id = fun loop -> loop;");
  const Term& loop = *m.module.lookup("loop");
  EXPECT_EQ(loop.body().fn().kind(), TermKind::Top);
  EXPECT_EQ(m.module.lookup("id")->body().kind(), TermKind::Local);
}

TEST(Print, Examples) {
  EXPECT_EQ(print_term(parse_term("fun x -> x")), "fun x -> x");
  EXPECT_EQ(print_type(Type::empty()), "Empty");
  EXPECT_EQ(print_type(parse_type("[] + (a :: la)")), "(a :: la) + []");
  EXPECT_EQ(print_term(parse_term("f (g x) (fun y -> y)")), "f (g x) (fun y -> y)");
  EXPECT_EQ(print_term(parse_term("(x, y :: [])")), "(x, y :: [])");
  EXPECT_EQ(print_scheme(parse_scheme("forall a. (a :: Ok) ~> a")), "forall a. {} => (a :: Ok) ~> a");
}

TEST(RoundTrip, GeneratedTerms) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Term t = testing::gen_open_term(rng, 6);
    std::string text = print_term(t);
    Term back = parse_term(text, Signature::standard(), {"g"});
    EXPECT_TRUE(alpha_eq(back, t)) << text;
    EXPECT_EQ(print_term(back), text);
  }
}

TEST(RoundTrip, GeneratedTypes) {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    Type t = testing::gen_type(rng, 5, {"a", "b"});
    std::string text = print_type(t);
    EXPECT_EQ(parse_type(text), t) << text;
  }
}

TEST(RoundTrip, Module) {
  const auto& m = testing::prelude();
  SourceModule back = parse_module(print_module(m));
  EXPECT_EQ(print_module(back), print_module(m));
  EXPECT_EQ(back.schemes, m.schemes);
}

TEST(ParseConstraints, Forms) {
  ConstraintSet cs = parse_constraints("{a <= b, b <= c}");
  EXPECT_EQ(cs.size(), 2u);
  EXPECT_EQ(parse_constraints("a <= b; b == c").size(), 3u);
  EXPECT_TRUE(parse_constraints("{}").empty());
  EXPECT_EQ(print_constraints(cs), "{a <= b, b <= c}");
}

}  // namespace
}  // namespace twoside
