// kernel_test.cpp - derivation checking, translation, proof search and soundness probes
#include <gtest/gtest.h>

#include <functional>

#include "support/test_support.hpp"
#include "twoside/json.hpp"
#include "twoside/kernel.hpp"

namespace twoside::kernel {
namespace {

using pcf::parse_pcf_term;
using pcf::parse_pcf_type;

Formula F(const char* m, const char* a) { return Formula{parse_pcf_term(m), parse_pcf_type(a)}; }
Sequent S(std::vector<Formula> l, std::vector<Formula> r) { return Sequent{std::move(l), std::move(r)}; }

KernelDocument load(const std::string& name) {
  return kernel_document_from_json(Json::parse(testing::read_file("corpus/kernel/" + name + ".json")));
}

const std::vector<std::string> kCorpus = {"add",           "twice",           "twice-pred-pair",  "fix-id",
                                          "pred-id-complement", "one-sided-twice", "one-sided-pred-id"};

std::vector<std::string> rules_preorder(const Derivation& d) {
  std::vector<std::string> out{d->rule};
  for (const auto& p : d->premises)
    for (auto& r : rules_preorder(p)) out.push_back(std::move(r));
  return out;
}

// Copy of d with node `target` (pre-order) replaced by f(node).
Derivation rewrite(const Derivation& d, std::size_t target, const std::function<Derivation(const Node&)>& f,
                   std::size_t& index) {
  if (index++ == target) return f(*d);
  std::vector<Derivation> ps;
  for (const auto& p : d->premises) ps.push_back(rewrite(p, target, f, index));
  return make_node(d->rule, d->conclusion, std::move(ps));
}

Derivation rewrite(const Derivation& d, std::size_t target, const std::function<Derivation(const Node&)>& f) {
  std::size_t index = 0;
  return rewrite(d, target, f, index);
}

Derivation retype(const Node& n) {
  Sequent s = n.conclusion;
  for (auto* side : {&s.left, &s.right})
    for (auto& f : *side) f.type = parse_pcf_type("Q");
  return make_node(n.rule, std::move(s), n.premises);
}

TEST(KernelCorpus, EveryDerivationChecksInItsSystem) {
  for (const auto& name : kCorpus) {
    KernelDocument doc = load(name);
    KernelReport r = check(doc.derivation, doc.system);
    EXPECT_TRUE(r.ok) << name << ": node " << r.node_index << " " << r.rule << ": " << r.message;
  }
  EXPECT_EQ(node_count(load("add").derivation), 13u);
}

TEST(KernelCorpus, JsonRoundTripIsByteIdentical) {
  for (const auto& name : kCorpus) {
    std::string text = testing::read_file("corpus/kernel/" + name + ".json");
    EXPECT_EQ(dump_json(kernel_document_to_json(kernel_document_from_json(Json::parse(text)))), text) << name;
  }
}

TEST(KernelCorpus, RetypingAnyNodeIsCaught) {
  for (const auto& name : kCorpus) {
    KernelDocument doc = load(name);
    // The root is skipped: several rules conclude at any type.
    for (std::size_t i = 1; i < node_count(doc.derivation); ++i) {
      KernelReport r = check(rewrite(doc.derivation, i, retype), doc.system);
      EXPECT_FALSE(r.ok) << name << " node " << i;
    }
  }
}

TEST(KernelCorpus, DroppingAPremiseIsCaught) {
  KernelDocument doc = load("add");
  for (std::size_t i = 0; i < node_count(doc.derivation); ++i) {
    Derivation m = rewrite(doc.derivation, i, [](const Node& n) {
      std::vector<Derivation> ps = n.premises;
      if (!ps.empty()) ps.pop_back();
      return make_node(n.rule, n.conclusion, std::move(ps));
    });
    if (rules_preorder(m) == rules_preorder(doc.derivation) && node_count(m) == node_count(doc.derivation)) continue;
    EXPECT_FALSE(check(m, doc.system).ok) << "node " << i;
  }
}

TEST(KernelTwoSided, DisNeedsDisjointTypes) {
  Derivation ok = make_node("Dis", S({F("(0, 1)", "Nat")}, {}),
                            {make_node("PairR", S({}, {F("(0, 1)", "Nat * Nat")}),
                                       {make_node("ZeroR", S({}, {F("0", "Nat")})),
                                        make_node("SuccR", S({}, {F("1", "Nat")}),
                                                  {make_node("ZeroR", S({}, {F("0", "Nat")}))})})});
  EXPECT_TRUE(check_two_sided(ok).ok);
  Derivation bad = make_node("Dis", S({F("(0, 1)", "Nat * Nat")}, {}), ok->premises);
  KernelReport r = check_two_sided(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.node_index, 0u);
  EXPECT_NE(r.message.find("disjoint"), std::string::npos) << r.message;
}

TEST(KernelTwoSided, ComplementsNeedTheSuccessSystem) {
  KernelDocument doc = load("pred-id-complement");
  EXPECT_TRUE(check_two_sided(doc.derivation, true).ok);
  KernelReport r = check_two_sided(doc.derivation);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.rule, "CompR");
}

TEST(KernelTwoSided, NecessityCodomainMustBeFinitelyVerifiable) {
  Derivation d = make_node("AbnR", S({}, {F("fun x -> x", "Nat ~> Nat -> Nat")}),
                           {make_node("Id", S({F("x", "Nat -> Nat")}, {F("x", "Nat")}))});
  KernelReport r = check_two_sided(d);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("finitely verifiable"), std::string::npos) << r.message;
}

TEST(KernelTwoSided, FreshnessIsEnforced) {
  // x : Nat occurs in the context, so AbsR may not bind x.
  Derivation d = make_node("AbsR", S({F("x", "Nat")}, {F("fun x -> x", "Ok -> Ok")}),
                           {make_node("OkVarR", S({F("x", "Nat"), F("x", "Ok")}, {F("x", "Ok")}))});
  KernelReport r = check_two_sided(d);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("occurs free"), std::string::npos) << r.message;
}

TEST(KernelOneSided, ContraAndVar) {
  EXPECT_TRUE(check_one_sided(make_node("Contra", S({F("x", "A"), F("x", "A^c")}, {F("zero", "Nat -> Nat")}))).ok);
  EXPECT_FALSE(check_one_sided(make_node("Var", S({F("x", "A")}, {F("x", "B")}))).ok);
  EXPECT_TRUE(check_one_sided(make_node("Var", S({F("x", "A")}, {F("x", "A")}))).ok);
  KernelReport r = check_one_sided(make_node("Var", S({F("succ(x)", "A")}, {F("x", "A")})));
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("non-variable"), std::string::npos) << r.message;
}

TEST(KernelOneSided, DerivedNecessityRulesCheckWithExpansion) {
  // Application at a necessity type is App1 once B ~> A reads B^c -> A^c.
  EXPECT_TRUE(check_one_sided(make_node("App1", S({F("f", "A ~> B"), F("y", "A^c")}, {F("f y", "B^c")}),
                                        {make_node("Var", S({F("f", "A ~> B"), F("y", "A^c")}, {F("f", "A ~> B")})),
                                         make_node("Var", S({F("f", "A ~> B"), F("y", "A^c")}, {F("y", "A^c")}))}))
                  .ok);
  // Abstraction at a necessity type is Abs with complemented binder and body.
  EXPECT_TRUE(check_one_sided(make_node("Abs", S({}, {F("fun x -> x", "A ~> A")}),
                                        {make_node("Var", S({F("x", "A^c")}, {F("x", "A^c")}))}))
                  .ok);
}

TEST(KernelTranslate, TwiceMatchesTheOneSidedSkeleton) {
  Derivation t = translate_to_one_sided(load("twice").derivation);
  EXPECT_TRUE(check_one_sided(t).ok) << check_one_sided(t).message;
  EXPECT_EQ(rules_preorder(t), (std::vector<std::string>{"Abs", "Abs", "App1", "Var", "App1", "Var", "Var"}));
  EXPECT_TRUE(same_sequent(t->conclusion, S({}, {F("fun f -> fun x -> f (f x)", "(A^c -> A^c) -> A^c -> A^c")})))
      << print_sequent(t->conclusion);
  EXPECT_TRUE(check_one_sided(load("one-sided-twice").derivation).ok);
}

TEST(KernelTranslate, EveryEligibleCorpusDerivationTranslates) {
  for (const auto& name : kCorpus) {
    KernelDocument doc = load(name);
    if (doc.system == System::OneSided) continue;
    Derivation t = translate_to_one_sided(doc.derivation);
    KernelReport r = check_one_sided(t);
    EXPECT_TRUE(r.ok) << name << ": " << r.rule << ": " << r.message;
  }
}

TEST(KernelTranslate, IdBecomesVarOrContra) {
  Derivation var = translate_to_one_sided(make_node("Id", S({F("x", "A")}, {F("x", "A")})));
  EXPECT_EQ(var->rule, "Var");
  Derivation contra =
      translate_to_one_sided(make_node("Id", S({F("x", "Nat"), F("succ(y)", "A")}, {F("x", "Nat")})));
  EXPECT_EQ(contra->rule, "Contra");
  EXPECT_TRUE(check_one_sided(contra).ok);
  EXPECT_TRUE(same_sequent(contra->conclusion, S({F("x", "Nat"), F("x", "Nat^c")}, {F("succ(y)", "A^c")})));
}

TEST(KernelTranslate, RejectsNonVariableSideFormulas) {
  Derivation d = make_node("Id", S({F("x", "Nat"), F("succ(y)", "A")}, {F("x", "Nat"), F("pred(y)", "B")}));
  EXPECT_TRUE(check_two_sided(d).ok);
  EXPECT_THROW((void)translate_to_one_sided(d), TranslationError);
  EXPECT_THROW((void)translate_to_one_sided(make_node("Id", S({F("x", "A")}, {F("x", "B")}))), TranslationError);
}

TEST(KernelProve, ClassicExamples) {
  auto d = prove_one_sided({}, parse_pcf_term("pred(fun x -> x)"), parse_pcf_type("Ok^c"), 6);
  ASSERT_TRUE(d.has_value());
  EXPECT_TRUE(check_one_sided(*d).ok);
  auto z = prove_one_sided({}, parse_pcf_term("zero"), parse_pcf_type("Nat"), 1);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ((*z)->rule, "Zero");
  EXPECT_FALSE(prove_one_sided({}, parse_pcf_term("zero"), parse_pcf_type("Nat -> Nat"), 8).has_value());
}

TEST(KernelProve, FindsTwiceAndItsIllTypedUse) {
  auto t = prove_one_sided({}, parse_pcf_term("fun f -> fun x -> f (f x)"), parse_pcf_type("(Nat -> Nat) -> Nat -> Nat"),
                           6);
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(check_one_sided(*t).ok);
  auto w = prove_one_sided({}, parse_pcf_term("pred((0, 1))"), parse_pcf_type("Ok^c"), 6);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(check_one_sided(*w).ok);
}

bool has_fix_at_ok_complement(const Derivation& d) {
  if (d->rule == "Fix" && d->conclusion.right.front().type == parse_pcf_type("Ok^c")) return true;
  for (const auto& p : d->premises)
    if (has_fix_at_ok_complement(p)) return true;
  return false;
}

// Fix at Ok^c followed by OkC1 on the recursion variable types a function
// that is a value after one unfolding; nothing inhabits Ok^c, so the
// fixpoint argument has no base case.
TEST(KernelProperty, FixAtOkComplementRefutesAValue) {
  pcf::PcfTerm m = parse_pcf_term("fix f -> fun x -> x");
  auto d = prove_one_sided({}, m, parse_pcf_type("Ok^c"), 3);
  ASSERT_TRUE(d.has_value());
  EXPECT_TRUE(check_one_sided(*d).ok);
  EXPECT_EQ(rules_preorder(*d), (std::vector<std::string>{"Fix", "OkC1"}));
  EXPECT_EQ(pcf::pcf_evaluate(m, 10).kind, pcf::PcfOutcome::Kind::Value);
}

TEST(KernelProperty, EveryValueRefutationGoesThroughFixAtOkComplement) {
  std::size_t proven = 0, values = 0, clean = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    pcf::PcfTerm m = pcf::gen_pcf_term(4 + seed % 9, seed);
    auto d = prove_one_sided({}, m, parse_pcf_type("Ok^c"), 8);
    if (!d) continue;
    ++proven;
    KernelReport r = check_one_sided(*d);
    ASSERT_TRUE(r.ok) << pcf::print_pcf_term(m) << ": " << r.rule << ": " << r.message;
    bool fix = has_fix_at_ok_complement(*d);
    if (!fix) ++clean;
    if (pcf::pcf_evaluate(m, 10000).kind != pcf::PcfOutcome::Kind::Value) continue;
    ++values;
    EXPECT_TRUE(fix) << pcf::print_pcf_term(m);
  }
  EXPECT_GT(clean, 20u);
  EXPECT_GT(values, 0u);
  EXPECT_GT(proven, values);
}

TEST(KernelProperty, CorpusRefutationsDoNotEvaluate) {
  std::size_t probed = 0;
  for (const auto& name : kCorpus) {
    KernelDocument doc = load(name);
    const Sequent& s = doc.derivation->conclusion;
    if (doc.system == System::OneSided || !s.right.empty() || s.left.size() != 1) continue;
    if (!s.left.front().type.is(pcf::PcfTypeKind::Ok)) continue;
    ++probed;
    EXPECT_NE(pcf::pcf_evaluate(s.left.front().term, 10000).kind, pcf::PcfOutcome::Kind::Value) << name;
  }
  EXPECT_GE(probed, 1u);
}

}  // namespace
}  // namespace twoside::kernel
