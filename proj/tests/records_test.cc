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
#include <cstdlib>
#include <limits>

#include "helpers.h"
#include "xlt/config.h"
#include "xlt/records.h"
#include "xlt/testgen.h"

namespace xlt {
namespace {

std::vector<Value> SampleValues() {
  BigInt huge = BigInt(1) << 200;
  return {Value::Void(),
          Value::I32(std::numeric_limits<std::int32_t>::min()),
          Value::I64(std::numeric_limits<std::int64_t>::max()),
          Value::Big(-huge - 7),
          Value::F64(0.1),
          Value::F64(-0.0),
          Value::F64(1e300),
          Value::Bool(true),
          Value::Str("a \"quoted\"\nline"),
          Value::Arr(TypeKind::kI32, {Value::I32(1), Value::I32(-2)}),
          Value::Lst(TypeKind::kF64, {}),
          Value::Lst(TypeKind::kBigInt, {Value::Big(huge)})};
}

TEST(Records, ValueRoundTrip) {
  for (const Value& v : SampleValues()) {
    auto back = ValueFromJson(ValueToJson(v));
    ASSERT_TRUE(back.has_value()) << back.error();
    EXPECT_TRUE(Identical(*back, v)) << v.Format();
  }
}

TEST(Records, BadValuesRejected) {
  EXPECT_FALSE(ValueFromJson(Json::parse(R"({"type":"i32","value":"x"})")).has_value());
  EXPECT_FALSE(ValueFromJson(Json::parse(R"({"type":"nope"})")).has_value());
  EXPECT_FALSE(ValueFromJson(Json::parse("3")).has_value());
  EXPECT_FALSE(ValueFromJson(Json::parse(R"({"type":"i32","value":4294967296})")).has_value());
}

TEST(Records, OutcomeRoundTrip) {
  ExecOutcome o;
  o.status = ExecStatus::kOk;
  o.return_value = Value::F64(2.5);
  o.param_state[1] = Value::Arr(TypeKind::kI32, {Value::I32(3)});
  o.printed = "1\n0\n";
  o.steps = 41;
  auto back = OutcomeFromJson(OutcomeToJson(o));
  ASSERT_TRUE(back.has_value()) << back.error();
  EXPECT_EQ(OutcomeToJson(*back).dump(), OutcomeToJson(o).dump());
  EXPECT_TRUE(OutcomesMatch(o, *back, 0.0));
  ExecOutcome fault;
  fault.status = ExecStatus::kDivByZero;
  EXPECT_EQ(OutcomeFromJson(OutcomeToJson(fault))->status, ExecStatus::kDivByZero);
}

TEST(Records, SuiteRoundTrip) {
  auto clamp = testing::Typed(Dialect::kDJ, testing::kJavaClamp);
  auto suite = EvolveSuite(clamp, "clamp", GenConfig{});
  ASSERT_TRUE(suite.has_value());
  Json j = SuiteToJson(*suite);
  auto back = SuiteFromJson(j);
  ASSERT_TRUE(back.has_value()) << back.error();
  EXPECT_EQ(SuiteToJson(*back).dump(), j.dump());
  EXPECT_EQ(back->cases.size(), suite->cases.size());
  EXPECT_TRUE(PassesSuite(clamp, *back, ExecLimits{}));
}

TEST(Records, PairRoundTrip) {
  ParallelPair p;
  p.src_id = "f";
  p.src_dialect = Dialect::kDP;
  p.src_text = "def f ( ) -> int :\n    return 1\n";
  p.tgt_dialect = Dialect::kDC;
  p.tgt_text = "int f ( ) {\n  return 1 ;\n}\n";
  p.suite_id = "f@DP";
  p.beam_rank = -1;
  p.forward = {Dialect::kDP, Dialect::kDC, {SiteKind::kTernarySwap, SiteKind::kIntDivRendering}, {1, 0}};
  p.iteration = 3;
  for (bool with_reverse : {false, true}) {
    if (with_reverse) p.reverse = DirectedChoices{Dialect::kDC, Dialect::kDP, {}, {}};
    auto back = PairFromJson(PairToJson(p));
    ASSERT_TRUE(back.has_value()) << back.error();
    EXPECT_EQ(PairToJson(*back).dump(), PairToJson(p).dump());
    EXPECT_EQ(back->reverse.has_value(), with_reverse);
  }
}

TEST(Records, JsonLines) {
  std::vector<int> xs = {1, 2, 3};
  std::string text = ToJsonLines(xs, [](int x) { return Json{{"x", x}}; });
  EXPECT_EQ(text, "{\"x\":1}\n{\"x\":2}\n{\"x\":3}\n");
  auto parsed = ParseJsonLines(text + "\n");
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(parsed->size(), 3u);
  EXPECT_FALSE(ParseJsonLines("{\"x\":1}\n{oops\n").has_value());
}

TEST(Records, IterationReport) {
  IterationReport r;
  r.iteration = 2;
  r.pairs = {{"DJ-DP", 5}};
  r.updates = 5;
  r.validation_ca1 = 0.75;
  r.model_id = "abc";
  Json j = IterationReportToJson(r);
  EXPECT_EQ(j["iteration"], 2);
  EXPECT_EQ(j["pairs"]["DJ-DP"], 5);
  EXPECT_DOUBLE_EQ(j["validation_ca1"].get<double>(), 0.75);
}

TEST(Records, FileHelpers) {
  std::string path = std::string(XLT_BINARY_DIR) + "/records_test.tmp";
  ASSERT_TRUE(WriteFile(path, "hello\n").has_value());
  EXPECT_EQ(*ReadFile(path), "hello\n");
  std::remove(path.c_str());
  EXPECT_FALSE(ReadFile(path).has_value());
}

TEST(Config, DefaultsRoundTrip) {
  RunConfig cfg;
  auto back = ConfigFromJson(ConfigToJson(cfg));
  ASSERT_TRUE(back.has_value()) << back.error();
  EXPECT_EQ(ConfigToJson(*back).dump(), ConfigToJson(cfg).dump());
  EXPECT_EQ(back->k, 20);
  EXPECT_DOUBLE_EQ(back->alpha, 0.5);
  EXPECT_DOUBLE_EQ(back->cache.p_remove, 0.3);
  EXPECT_DOUBLE_EQ(back->cache.p_sample_cache, 0.5);
  EXPECT_EQ(back->cache.warmup_min, 500);
}

TEST(Config, PartialOverridesKeepDefaults) {
  auto cfg = ConfigFromJson(Json::parse(R"({"k": 5, "cache": {"p_remove": 0.5}, "seeds": {"testgen": 9}, "jobs": 2})"));
  ASSERT_TRUE(cfg.has_value()) << cfg.error();
  EXPECT_EQ(cfg->k, 5);
  EXPECT_DOUBLE_EQ(cfg->cache.p_remove, 0.5);
  EXPECT_DOUBLE_EQ(cfg->cache.p_sample_cache, 0.5);
  EXPECT_EQ(cfg->gen.seed, 9u);
  EXPECT_EQ(cfg->gen.jobs, 2);
  EXPECT_DOUBLE_EQ(cfg->alpha, 0.5);
}

TEST(Config, InvalidValuesRejected) {
  for (const char* bad : {R"({"k": 0})", R"({"jobs": 0})", R"({"cache": {"p_remove": 0}})",
                          R"({"cache": {"p_sample_cache": 1.5}})", R"({"cache": {"warmup_min": -1}})",
                          R"({"unknown": 1})", R"({"k": "ten"})"}) {
    EXPECT_FALSE(ConfigFromJson(Json::parse(bad)).has_value()) << bad;
  }
}

TEST(Config, EnvOverridesPaths) {
  RunConfig cfg;
  setenv("XLT_CORPUS_DIR", "/tmp/xlt-env", 1);
  ApplyEnvOverrides(cfg);
  unsetenv("XLT_CORPUS_DIR");
  EXPECT_EQ(cfg.paths.corpus_dir, "/tmp/xlt-env");
  EXPECT_EQ(cfg.k, 20);
}

}  // namespace
}  // namespace xlt
