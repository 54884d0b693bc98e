// json_test.cpp - JSON round trips and decoder errors
#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "twoside/json.hpp"

namespace twoside {
namespace {

using testing::Rng;

TEST(Json, JudgementRoundTrip) {
  TypeEnv g = TypeEnv{}.bind("f", Type::nec(Type::ctor("Nil", {}), Type::ok()));
  Judgement j{g, std::nullopt, Typing{parse_term("fun x -> f x"), Type::var("a5")}};
  Json enc = judgement_to_json(j);
  Judgement back = judgement_from_json(enc);
  EXPECT_TRUE(back.gamma == j.gamma);
  EXPECT_FALSE(back.left.has_value());
  ASSERT_TRUE(back.right.has_value());
  EXPECT_EQ(back.right->term, j.right->term);
  EXPECT_EQ(back.right->type, j.right->type);
  EXPECT_EQ(enc["text"], "f : [] ~> Ok |- fun x -> f x : a5");
  EXPECT_EQ(judgement_to_json(back), enc);
}

TEST(Json, TypeShape) {
  Json j = type_to_json(parse_type("a -> [] + Ok :: b"));
  EXPECT_EQ(j["kind"], "to");
  EXPECT_EQ(j["cod"]["kind"], "sum");
  EXPECT_EQ(j["cod"]["summands"][0]["ctor"], "Cons");
  EXPECT_EQ(j["cod"]["summands"][1]["ctor"], "Nil");
}

TEST(Json, DecoderErrorsNameTheField) {
  try {
    (void)type_from_json(Json{{"kind", "to"}, {"dom", Json{{"kind", "ok"}}}});
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cod"), std::string::npos);
  }
  EXPECT_THROW((void)term_from_json(Json{{"kind", "lambda"}}), std::invalid_argument);
  EXPECT_THROW((void)derivation_from_json(Json{{"rule", "Nope"}}), std::invalid_argument);
  EXPECT_THROW((void)judgement_from_json(Json{{"gamma", Json::array()}, {"left", nullptr}, {"right", nullptr}}),
               std::invalid_argument);
}

TEST(JsonProperty, TermsAndTypesRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Term t = testing::gen_open_term(rng, 5);
    EXPECT_EQ(term_from_json(term_to_json(t)), t);
    Type ty = testing::gen_type(rng, 4, {"a", "b"});
    EXPECT_EQ(type_from_json(type_to_json(ty)), ty);
  }
}

TEST(JsonProperty, InferredDerivationsRoundTripAndValidate) {
  const SourceModule& env = testing::prelude();
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Term m = gen_term(4 + seed % 10, seed, env);
    InferOptions opts;
    opts.product_cap = 16;
    for (const auto& ij : infer_left(TypeEnv{}, m, std::nullopt, env.schemes, env.signature, opts).judgements) {
      Json enc = inferred_to_json(ij);
      InferredJudgement back = inferred_from_json(Json::parse(dump_json(enc)));
      EXPECT_EQ(inferred_to_json(back), enc);
      EXPECT_TRUE(validate_algorithmic(back.derivation, back.constraints, env.schemes, env.signature).ok);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

}  // namespace
}  // namespace twoside
