// Copyright 2026 The xlt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "helpers.h"
#include "xlt/translate.h"

namespace xlt {
namespace {

using testing::Typed;

// From tests/oracles/arith.py.
constexpr double kScoreLen16 = -0.5;
constexpr double kScoreLen25 = -0.4;

// One ConditionPolarity and one TernarySwap site when going to DC.
const char* kTwoSites =
    "static int pick(int a, int b) {\n"
    "  if (a < b) {\n"
    "    return a;\n"
    "  }\n"
    "  return b > 0 ? b : 0;\n"
    "}\n";

std::string Reference(const TypedFunction& fn, Dialect target) {
  auto ref = ReferenceTranspile(fn, target);
  EXPECT_TRUE(ref.has_value()) << (ref ? "" : ref.error().message);
  return ref ? Print(*ref) : "";
}

TEST(Reference, IsOddGetsParensInJava) {
  auto odd = Typed(Dialect::kDP, testing::kPyIsOdd);
  std::string text = Reference(odd, Dialect::kDJ);
  EXPECT_NE(text.find("return ( x & 1 ) == 1 ;"), std::string::npos) << text;
  EXPECT_NE(text.find("Reference"), 0u);
  auto sites = DetectSites(odd, Dialect::kDJ);
  ASSERT_TRUE(sites.has_value());
  ASSERT_EQ(sites->size(), 1u);
  EXPECT_EQ((*sites)[0].kind, SiteKind::kPrecedenceParens);
  auto bare = RenderTranslation(odd, Dialect::kDJ, {1});
  ASSERT_TRUE(bare.has_value());
  EXPECT_NE(bare->text.find("return x & 1 == 1 ;"), std::string::npos) << bare->text;
  // The bare form parses but does not typecheck in DJ.
  ASSERT_TRUE(bare->fn.has_value());
  EXPECT_FALSE(Typecheck(*bare->fn).has_value());
}

TEST(Reference, PrintbUsesFloorDivision) {
  auto pb = Typed(Dialect::kDJ, testing::kJavaPrintb);
  std::string text = Reference(pb, Dialect::kDP);
  EXPECT_NE(text.find("x //= 2"), std::string::npos) << text;
}

TEST(Reference, FactorialKeepsFixedWidth) {
  auto fac = Typed(Dialect::kDJ, testing::kJavaFactorial);
  std::string text = Reference(fac, Dialect::kDP);
  EXPECT_NE(text.find("( n : i32 ) -> i32"), std::string::npos) << text;
  auto ref = ReferenceTranspile(fac, Dialect::kDP);
  auto typed = Typecheck(*ref);
  ASSERT_TRUE(typed.has_value());
  ExecOutcome o = Execute(*typed, {Value::I32(13)});
  EXPECT_TRUE(ValuesMatch(*o.return_value, Execute(fac, {Value::I32(13)}).return_value.value(), 0.0));
  auto sites = DetectSites(fac, Dialect::kDP);
  ASSERT_TRUE(sites.has_value());
  ASSERT_FALSE(sites->empty());
  EXPECT_EQ((*sites)[0].kind, SiteKind::kIntCastPolicy);
  auto unbounded = RenderTranslation(fac, Dialect::kDP, {1});
  EXPECT_NE(unbounded->text.find("( n : int ) -> int"), std::string::npos) << unbounded->text;
}

TEST(Reference, PowOperatorHasNoJavaForm) {
  auto fn = Typed(Dialect::kDP, "def f(a: int) -> int:\n    return a ** 2\n");
  EXPECT_FALSE(ReferenceTranspile(fn, Dialect::kDJ).has_value());
}

TEST(Beam, ScoreRegression) {
  EXPECT_DOUBLE_EQ(BeamScore(-2.0, 16, 0.5), kScoreLen16);
  EXPECT_DOUBLE_EQ(BeamScore(-2.0, 25, 0.5), kScoreLen25);
  EXPECT_GT(BeamScore(-2.0, 25, 0.5), BeamScore(-2.0, 16, 0.5));
  EXPECT_DOUBLE_EQ(BeamScore(-2.0, 25, 0.0), -2.0);
}

TEST(Beam, TwoSitesGiveFourCandidates) {
  auto fn = Typed(Dialect::kDJ, kTwoSites);
  auto sites = DetectSites(fn, Dialect::kDC);
  ASSERT_TRUE(sites.has_value());
  ASSERT_EQ(sites->size(), 2u);
  auto beam = EnumerateCandidates(fn, "pick", Dialect::kDC, AmbiguityModel::Uniform(), 10, 0.5);
  ASSERT_TRUE(beam.has_value());
  EXPECT_EQ(beam->candidates.size(), 4u);
  for (const Candidate& c : beam->candidates) EXPECT_DOUBLE_EQ(c.raw_logprob, 2 * std::log(0.5));
}

TEST(Beam, NoSitesGivesReference) {
  auto fn = Typed(Dialect::kDJ, "static int add(int a, int b) { return a + b; }");
  auto beam = EnumerateCandidates(fn, "add", Dialect::kDC, AmbiguityModel::Uniform(), 20, 0.5);
  ASSERT_TRUE(beam.has_value());
  ASSERT_EQ(beam->candidates.size(), 1u);
  EXPECT_EQ(beam->candidates[0].rendering.text, Reference(fn, Dialect::kDC));
  EXPECT_TRUE(beam->candidates[0].choices.empty());
}

const char* kThreeSites =
    "static int f(int a, int b) {\n"
    "  int m = Integer.MAX_VALUE;\n"
    "  if (a < b) {\n"
    "    m = a;\n"
    "  }\n"
    "  return b > 0 ? m : b;\n"
    "}\n";

TEST(Beam, FullSpaceEnumeratedOnce) {
  auto fn = Typed(Dialect::kDJ, kThreeSites);
  auto sites = DetectSites(fn, Dialect::kDC);
  ASSERT_EQ(sites->size(), 3u);
  auto beam = EnumerateCandidates(fn, "f", Dialect::kDC, AmbiguityModel::Uniform(), 8, 0.5);
  ASSERT_TRUE(beam.has_value());
  std::set<std::vector<int>> seen;
  for (const Candidate& c : beam->candidates) EXPECT_TRUE(seen.insert(c.choices).second);
  EXPECT_EQ(seen.size(), 8u);
  auto smaller = EnumerateCandidates(fn, "f", Dialect::kDC, AmbiguityModel::Uniform(), 5, 0.5);
  EXPECT_EQ(smaller->candidates.size(), 5u);
}

// A model that prefers some wrong options, to make raw scores differ.
AmbiguityModel Skewed() {
  AmbiguityModel m;
  std::vector<DirectedChoices> batch;
  for (int i = 0; i < 3; ++i) {
    batch.push_back({Dialect::kDJ, Dialect::kDP, {SiteKind::kIntDivRendering}, {1}});
    batch.push_back({Dialect::kDJ, Dialect::kDP, {SiteKind::kMulVsPow}, {0}});
  }
  batch.push_back({Dialect::kDJ, Dialect::kDP, {SiteKind::kPrecedenceParens}, {1}});
  return m.LearnUpdate(batch);
}

const char* kMixed =
    "static int g(int a, int b) {\n"
    "  int s = 0;\n"
    "  while (a > 0) {\n"
    "    s += (a & 3) * b;\n"
    "    a /= 2;\n"
    "  }\n"
    "  return s > 10 ? s / 3 : s;\n"
    "}\n";

TEST(Beam, SortedDistinctAndBounded) {
  auto fn = Typed(Dialect::kDJ, kMixed);
  for (int k : {1, 3, 20}) {
    auto beam = EnumerateCandidates(fn, "g", Dialect::kDP, Skewed(), k, 0.5);
    ASSERT_TRUE(beam.has_value());
    EXPECT_LE(static_cast<int>(beam->candidates.size()), k);
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < beam->candidates.size(); ++i) {
      const Candidate& c = beam->candidates[i];
      EXPECT_TRUE(seen.insert(c.choices).second);
      EXPECT_DOUBLE_EQ(c.score, BeamScore(c.raw_logprob, c.token_length, 0.5));
      if (i > 0) EXPECT_GE(beam->candidates[i - 1].score + 1e-9, c.score);
    }
  }
}

TEST(Beam, AlphaZeroRanksByRaw) {
  auto fn = Typed(Dialect::kDJ, kMixed);
  auto beam = EnumerateCandidates(fn, "g", Dialect::kDP, Skewed(), 64, 0.0);
  ASSERT_TRUE(beam.has_value());
  ASSERT_GT(beam->candidates.size(), 4u);
  for (size_t i = 1; i < beam->candidates.size(); ++i) {
    EXPECT_GE(beam->candidates[i - 1].raw_logprob + 1e-9, beam->candidates[i].raw_logprob);
  }
}

TEST(Beam, TokenLengthMatchesRenderedText) {
  auto text = testing::ReadFileForTest(testing::DataPath("data/corpus.dj"));
  auto fns = ParseMany(Dialect::kDJ, text);
  ASSERT_TRUE(fns.has_value());
  for (size_t i = 0; i < fns->size(); i += 7) {
    auto fn = Typecheck((*fns)[i]);
    for (Dialect target : {Dialect::kDP, Dialect::kDC}) {
      auto beam = EnumerateCandidates(*fn, fn->name(), target, AmbiguityModel::Uniform(), 20, 0.5);
      ASSERT_TRUE(beam.has_value());
      for (const Candidate& c : beam->candidates) {
        EXPECT_EQ(c.token_length, TokenCount(target, c.rendering.text)) << c.rendering.text;
      }
    }
  }
}

TEST(Beam, DeterministicAcrossCalls) {
  auto fn = Typed(Dialect::kDJ, kMixed);
  auto a = EnumerateCandidates(fn, "g", Dialect::kDP, Skewed(), 20, 0.5);
  auto b = EnumerateCandidates(fn, "g", Dialect::kDP, Skewed(), 20, 0.5);
  ASSERT_EQ(a->candidates.size(), b->candidates.size());
  for (size_t i = 0; i < a->candidates.size(); ++i) {
    EXPECT_EQ(a->candidates[i].rendering.text, b->candidates[i].rendering.text);
  }
}

TEST(Beam, BestFirstBeyondExactLimit) {
  // Thirteen ternaries give 2^13 > 4096 joint vectors.
  std::string body;
  for (int i = 0; i < 13; ++i) body += "  s += a > " + std::to_string(i) + " ? 1 : 2;\n";
  auto fn = Typed(Dialect::kDJ, "static int h(int a) {\n  int s = 0;\n" + body + "  return s;\n}\n");
  auto sites = DetectSites(fn, Dialect::kDC);
  ASSERT_EQ(sites->size(), 13u);
  AmbiguityModel m = AmbiguityModel::WithNoise({{{SiteKind::kTernarySwap, 0.2}}});
  auto beam = EnumerateCandidates(fn, "h", Dialect::kDC, m, 20, 0.5);
  ASSERT_TRUE(beam.has_value());
  ASSERT_EQ(beam->candidates.size(), 20u);
  EXPECT_EQ(beam->candidates[0].choices, std::vector<int>(13, 0));
  // One wrong site costs log(0.2) - log(0.8); every single-error vector
  // must be present before any double error.
  int singles = 0;
  for (const Candidate& c : beam->candidates) {
    int errors = 0;
    for (int o : c.choices) errors += o;
    EXPECT_LE(errors, 2);
    singles += errors == 1;
  }
  EXPECT_EQ(singles, 13);
}

TEST(Model, LaplaceCounting) {
  std::vector<DirectedChoices> batch(100, {Dialect::kDJ, Dialect::kDP, {SiteKind::kIntDivRendering}, {0}});
  AmbiguityModel m = AmbiguityModel::Uniform().LearnUpdate(batch);
  EXPECT_DOUBLE_EQ(m.Prob(SiteKind::kIntDivRendering, Dialect::kDJ, Dialect::kDP, 0), 101.0 / 102.0);
  EXPECT_DOUBLE_EQ(m.Prob(SiteKind::kIntDivRendering, Dialect::kDP, Dialect::kDJ, 0), 0.5);
}

TEST(Model, EmptyBatchIsIdentity) {
  AmbiguityModel m = Skewed();
  EXPECT_EQ(m.LearnUpdate({}), m);
}

TEST(Model, EvenSplitStaysUniform) {
  std::vector<DirectedChoices> batch;
  for (int i = 0; i < 50; ++i) {
    batch.push_back({Dialect::kDC, Dialect::kDJ, {SiteKind::kTernarySwap}, {0}});
    batch.push_back({Dialect::kDC, Dialect::kDJ, {SiteKind::kTernarySwap}, {1}});
  }
  AmbiguityModel m = AmbiguityModel::Uniform().LearnUpdate(batch);
  EXPECT_DOUBLE_EQ(m.Prob(SiteKind::kTernarySwap, Dialect::kDC, Dialect::kDJ, 0), 0.5);
}

TEST(Model, UpdateIsOrderIndependentAndPure) {
  std::vector<DirectedChoices> batch;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    SiteKind kind = kSiteKinds[rng() % kSiteKinds.size()];
    batch.push_back({kDialects[rng() % 3], kDialects[rng() % 3], {kind, kind}, {static_cast<int>(rng() % 2), 1}});
  }
  AmbiguityModel base = Skewed();
  AmbiguityModel before = base;
  AmbiguityModel a = base.LearnUpdate(batch);
  std::shuffle(batch.begin(), batch.end(), rng);
  AmbiguityModel b = base.LearnUpdate(batch);
  EXPECT_EQ(a, b);
  EXPECT_EQ(base, before);
}

TEST(Model, NoiseOverridesCounts) {
  AmbiguityModel m = AmbiguityModel::WithNoise({{{SiteKind::kConditionPolarity, 1.0}}});
  EXPECT_DOUBLE_EQ(m.Prob(SiteKind::kConditionPolarity, Dialect::kDJ, Dialect::kDC, 1), 1.0);
  AmbiguityModel p = AmbiguityModel::Perfect();
  for (SiteKind k : kSiteKinds) EXPECT_DOUBLE_EQ(p.Prob(k, Dialect::kDP, Dialect::kDC, 0), 1.0);
}

TEST(Model, JsonlRoundTrip) {
  for (const AmbiguityModel& m : {AmbiguityModel::Uniform(), Skewed(), AmbiguityModel::Perfect(),
                                  AmbiguityModel::WithNoise({{{SiteKind::kMulVsPow, 0.25}}})}) {
    auto back = AmbiguityModel::FromJsonl(m.ToJsonl());
    ASSERT_TRUE(back.has_value()) << back.error();
    EXPECT_EQ(*back, m);
    EXPECT_EQ(back->ToJsonl(), m.ToJsonl());
  }
  EXPECT_FALSE(AmbiguityModel::FromJsonl("{\"kind\":\"Nope\"}\n").has_value());
}

TEST(Match, RecoversChoices) {
  auto fn = Typed(Dialect::kDJ, kMixed);
  auto sites = DetectSites(fn, Dialect::kDP);
  ASSERT_TRUE(sites.has_value());
  std::vector<int> choices(sites->size(), 0);
  choices.back() = 1;
  auto r = RenderTranslation(fn, Dialect::kDP, choices);
  ASSERT_TRUE(r.has_value() && r->fn.has_value());
  auto typed = Typecheck(*r->fn);
  ASSERT_TRUE(typed.has_value());
  // Translating the result back must find the choices that undo it.
  auto back = MatchChoices(*typed, fn.def);
  ASSERT_TRUE(back.has_value());
  auto again = RenderTranslation(*typed, Dialect::kDJ, back->options);
  ASSERT_TRUE(again->fn.has_value());
  EXPECT_TRUE(StructurallyEqual(*again->fn, fn.def)) << again->text;
}

}  // namespace
}  // namespace xlt
