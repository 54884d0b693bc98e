// infer_test.cpp - inference clauses, derivation validation and scheme checking
#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "twoside/constraints.hpp"
#include "twoside/infer.hpp"

namespace twoside {
namespace {

using testing::Rng;

const Signature& sig() {
  static const Signature s = Signature::standard();
  return s;
}

SchemeEnv golden_schemes() { return {{"f", {parse_scheme("Nil ~> Ok")}}}; }

bool contains_equivalent(const InferResult& r, const ConstraintSet& c, const Type& t) {
  std::size_t hits = 0;
  for (const auto& j : r.judgements)
    if (equivalent_up_to_renaming(j.constraints, j.judgement.subject_type(), c, t)) ++hits;
  return hits == 1;
}

void expect_all_valid(const InferResult& r, const SchemeEnv& schemes) {
  for (const auto& j : r.judgements) {
    auto v = validate_algorithmic(j.derivation, j.constraints, schemes, sig());
    EXPECT_TRUE(v.ok) << print_inferred(j) << "\n" << v.message;
  }
}

TEST(InferRight, GoldenFourJudgements) {
  Term m = parse_term("fun x -> f x", sig(), {"f"});
  auto r = infer_right(TypeEnv{}, m, golden_schemes(), sig());
  ASSERT_EQ(r.judgements.size(), 4u);
  EXPECT_FALSE(r.truncated);
  EXPECT_TRUE(contains_equivalent(r, parse_constraints("{Ok <= a1, a1 ~> a2 <= a3}"), Type::var("a3")));
  EXPECT_TRUE(contains_equivalent(r, parse_constraints("{Ok <= a1, [] ~> Ok <= a3, a3 <= a2 ~> a4, a1 ~> a4 <= a5}"),
                                  Type::var("a5")));
  EXPECT_TRUE(contains_equivalent(r, parse_constraints("{a2 <= a1, [] ~> Ok <= a3, a3 <= a2 ~> a4, a1 ~> a4 <= a5}"),
                                  Type::var("a5")));
  EXPECT_TRUE(contains_equivalent(r, parse_constraints("{a1 <= a2, [] ~> Ok <= a3, a3 <= a2 -> a4, a1 -> a4 <= a5}"),
                                  Type::var("a5")));
  expect_all_valid(r, golden_schemes());
}

TEST(InferRight, OnlyTheSufficiencyJudgementIsInconsistent) {
  Term m = parse_term("fun x -> f x", sig(), {"f"});
  auto r = infer_right(TypeEnv{}, m, golden_schemes(), sig());
  int inconsistent = 0;
  for (const auto& j : r.judgements)
    if (!is_consistent(j.constraints)) {
      ++inconsistent;
      EXPECT_EQ(j.derivation->rule, Rule::AbsR2);
    }
  EXPECT_EQ(inconsistent, 1);
}

TEST(InferRight, NullaryConstructorAndFreeVariable) {
  auto zero = infer_right(TypeEnv{}, Term::ctor("Zero"), {}, sig());
  ASSERT_EQ(zero.judgements.size(), 1u);
  EXPECT_TRUE(equivalent_up_to_renaming(zero.judgements[0].constraints, zero.judgements[0].judgement.subject_type(),
                                        parse_constraints("{Zero <= a}"), Type::var("a")));
  auto x = infer_right(TypeEnv{}, Term::local("x"), {}, sig());
  ASSERT_EQ(x.judgements.size(), 1u);
  EXPECT_TRUE(equivalent_up_to_renaming(x.judgements[0].constraints, x.judgements[0].judgement.subject_type(),
                                        parse_constraints("{Ok <= b}"), Type::var("b")));
  EXPECT_EQ(x.judgements[0].derivation->rule, Rule::VarK2);
}

TEST(InferRight, BoundVariableUsesItsType) {
  TypeEnv g = TypeEnv{}.bind("x", parse_type("Nil"));
  auto r = infer_right(g, Term::local("x"), {}, sig());
  ASSERT_EQ(r.judgements.size(), 1u);
  EXPECT_TRUE(r.judgements[0].constraints.contains({parse_type("Nil"), r.judgements[0].judgement.subject_type()}));
  EXPECT_EQ(r.judgements[0].derivation->rule, Rule::Var2);
}

TEST(InferLeft, AbstractionIncludesDisjointness) {
  auto r = infer_left(TypeEnv{}, parse_term("fun x -> x"), std::pair{std::string("y"), Type::var("B")}, {}, sig());
  ASSERT_EQ(r.judgements.size(), 2u);
  bool found = false;
  for (const auto& j : r.judgements) {
    if (j.derivation->rule != Rule::AbsDL2) continue;
    found = true;
    ASSERT_EQ(j.constraints.size(), 1u);
    const Constraint& k = *j.constraints.begin();
    EXPECT_EQ(k.lhs, j.judgement.subject_type());
    EXPECT_TRUE(k.rhs.is_sum());
    EXPECT_EQ(k.rhs.summands().size(), sig().entries().size());
  }
  EXPECT_TRUE(found);
}

TEST(InferLeft, FixYieldsNothing) {
  auto r = infer_left(TypeEnv{}, parse_term("fix f -> f"), std::nullopt, {}, sig());
  EXPECT_TRUE(r.judgements.empty());
}

TEST(InferLeft, NullaryConstructorClauses) {
  auto r = infer_left(TypeEnv{}, Term::ctor("Zero"), std::pair{std::string("x"), Type::var("b")}, {}, sig());
  ASSERT_EQ(r.judgements.size(), 4u);
  std::set<Rule> rules;
  for (const auto& j : r.judgements) rules.insert(j.derivation->rule);
  EXPECT_EQ(rules, (std::set<Rule>{Rule::VarK2, Rule::CnsDL21, Rule::CnsDL22, Rule::CnsDL23}));
  expect_all_valid(r, {});
}

TEST(Instantiate, Examples) {
  auto head = parse_scheme("forall a. (a :: Ok) ~> a");
  auto i = instantiate_scheme(head, {parse_type("Zero + Succ(Ok)")});
  EXPECT_EQ(i.type, parse_type("((Zero + Succ(Ok)) :: Ok) ~> (Zero + Succ(Ok))"));
  EXPECT_TRUE(i.obligations.empty());
  const auto& map = testing::prelude().schemes.at("map")[0];
  auto j = instantiate_scheme(map, {Type::var("p"), Type::var("q"), Type::var("r"), Type::var("s")});
  EXPECT_EQ(j.type, parse_type("(p -> q) -> r -> s"));
  EXPECT_TRUE(j.obligations.contains(parse_constraint("r <= [] + (p :: r)")));
  EXPECT_EQ(j.obligations.size(), 4u);
  EXPECT_THROW((void)instantiate_scheme(head, {}), std::invalid_argument);
}

TEST(Validate, HandBuiltVarNode) {
  TypeEnv g = TypeEnv{}.bind("x", parse_type("Nil"));
  auto n = std::make_shared<const AlgNode>(
      AlgNode{Rule::Var2, Judgement{g, std::nullopt, Typing{Term::local("x"), parse_type("Zero")}}, {}, {}, 0});
  EXPECT_TRUE(validate_algorithmic(n, parse_constraints("{Nil <= Zero}"), {}, sig()).ok);
  auto bad = validate_algorithmic(n, {}, {}, sig());
  EXPECT_FALSE(bad.ok);
  ASSERT_TRUE(bad.failing_rule.has_value());
  EXPECT_EQ(*bad.failing_rule, Rule::Var2);
  EXPECT_NE(bad.message.find("Var2"), std::string::npos);
}

TEST(Validate, RejectsTamperedPremise) {
  Term m = parse_term("fun x -> f x", sig(), {"f"});
  auto r = infer_right(TypeEnv{}, m, golden_schemes(), sig());
  for (const auto& j : r.judgements) {
    if (j.derivation->rule != Rule::AbsR2) continue;
    AlgNode copy = *j.derivation;
    copy.aux[0] = Type::var("zz");
    auto v = validate_algorithmic(std::make_shared<const AlgNode>(copy), j.constraints, golden_schemes(), sig());
    EXPECT_FALSE(v.ok);
  }
}

TEST(Renaming, Equivalence) {
  auto c1 = parse_constraints("{a <= b, b <= Nil}");
  auto c2 = parse_constraints("{x <= y, y <= Nil}");
  auto c3 = parse_constraints("{x <= y, x <= Nil}");
  EXPECT_TRUE(equivalent_up_to_renaming(c1, Type::var("a"), c2, Type::var("x")));
  EXPECT_FALSE(equivalent_up_to_renaming(c1, Type::var("a"), c3, Type::var("x")));
  EXPECT_FALSE(equivalent_up_to_renaming(c1, Type::var("a"), c2, Type::var("y")));
  EXPECT_FALSE(equivalent_up_to_renaming(c1, Type::var("a"), c2, Type::var("x"), {"a"}));
}

Term gen_closed_ish(Rng& rng, int depth) { return testing::gen_open_term(rng, depth); }

SchemeEnv g_schemes() { return {{"g", {parse_scheme("forall a. a -> a"), parse_scheme("Nil ~> Ok")}}}; }

TEST(InferProperty, EveryJudgementValidates) {
  Rng rng(42);
  std::size_t checked = 0;
  for (int iter = 0; iter < 150; ++iter) {
    Term m = gen_closed_ish(rng, 3);
    InferOptions opts;
    opts.product_cap = 300;
    auto r = infer_right(TypeEnv{}, m, g_schemes(), sig(), opts);
    for (const auto& j : r.judgements) {
      auto v = validate_algorithmic(j.derivation, j.constraints, g_schemes(), sig());
      ASSERT_TRUE(v.ok) << print_term(m) << "\n" << print_inferred(j) << "\n" << v.message;
      ++checked;
    }
    auto l = infer_left(TypeEnv{}, m, std::pair{std::string("x"), Type::var("d")}, g_schemes(), sig(), opts);
    for (const auto& j : l.judgements) {
      auto v = validate_algorithmic(j.derivation, j.constraints, g_schemes(), sig());
      ASSERT_TRUE(v.ok) << print_term(m) << "\n" << print_inferred(j) << "\n" << v.message;
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(InferProperty, DeterministicUpToRenaming) {
  Rng rng(8);
  for (int iter = 0; iter < 60; ++iter) {
    Term m = gen_closed_ish(rng, 2);
    InferOptions p;
    p.prefix = "p";
    auto r1 = infer_right(TypeEnv{}, m, g_schemes(), sig());
    auto r2 = infer_right(TypeEnv{}, m, g_schemes(), sig(), p);
    ASSERT_EQ(r1.judgements.size(), r2.judgements.size());
    for (std::size_t i = 0; i < r1.judgements.size(); ++i)
      EXPECT_TRUE(equivalent_up_to_renaming(r1.judgements[i].constraints, r1.judgements[i].judgement.subject_type(),
                                            r2.judgements[i].constraints, r2.judgements[i].judgement.subject_type()));
  }
}

TEST(InferProperty, FreshVariablesAvoidTheEnvironment) {
  TypeEnv g = TypeEnv{}.bind("x", Type::var("a1")).bind("y", Type::var("a2"));
  auto r = infer_right(g, parse_term("fun z -> x (y z)"), {}, sig());
  for (const auto& j : r.judgements) {
    ASSERT_FALSE(j.derivation->aux.empty());
    EXPECT_NE(j.derivation->aux[0], Type::var("a1"));
    EXPECT_NE(j.derivation->aux[1], Type::var("a2"));
    EXPECT_NE(j.judgement.subject_type(), Type::var("a1"));
    EXPECT_NE(j.judgement.subject_type(), Type::var("a2"));
  }
}

TEST(InferProperty, OutputSizeIsBoundedAndCapReported) {
  Term m = parse_term("fun x -> match x with | [] -> x | y :: ys -> y ys end");
  InferOptions small;
  small.product_cap = 5;
  auto r = infer_right(TypeEnv{}, m, {}, sig(), small);
  EXPECT_TRUE(r.truncated);
  auto full = infer_right(TypeEnv{}, m, {}, sig());
  EXPECT_FALSE(full.truncated);
  EXPECT_GT(full.judgements.size(), r.judgements.size());
}

TEST(TopLevel, PreludeSchemesAccepted) {
  auto report = check_toplevel(testing::prelude());
  for (const auto& v : report.verdicts) EXPECT_TRUE(v.accepted) << v.name << "#" << v.scheme_index << ": " << v.message;
  EXPECT_TRUE(report.ok);
  EXPECT_EQ(report.verdicts.size(), 3u);
}

TEST(TopLevel, SufficiencyMutationOfHeadRejected) {
  auto v = check_definition(testing::prelude(), "head", parse_scheme("forall a. Ok -> a"));
  EXPECT_FALSE(v.accepted);
  // Every cons cell with an `a` head yields an `a`, so the sufficiency form holds too.
  auto w = check_definition(testing::prelude(), "head", parse_scheme("forall a. (a :: Ok) -> a"));
  EXPECT_TRUE(w.accepted) << w.message;
  auto z = check_definition(testing::prelude(), "head", parse_scheme("forall a. [] -> a"));
  EXPECT_FALSE(z.accepted);
}

TEST(TopLevel, UndeclaredDefinitionRejected) {
  SourceModule src = parse_module("id = fun x -> x;");
  auto report = check_toplevel(src);
  EXPECT_FALSE(report.ok);
}

}  // namespace
}  // namespace twoside
