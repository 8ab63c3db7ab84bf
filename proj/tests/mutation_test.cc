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

#include <set>

#include "helpers.h"
#include "xlt/mutation.h"
#include "xlt/testgen.h"

namespace xlt {
namespace {

using testing::Typed;

// From tests/oracles/mutants.py.
constexpr int kPowMutants = 55;

std::string ReturnText(const Mutant& m) { return PrintExpr(m.mutated.def.body.back().exprs.at(0), m.mutated.dialect()); }

const Mutant* FindByReturn(const std::vector<Mutant>& ms, const std::string& text) {
  for (const Mutant& m : ms) {
    if (ReturnText(m) == text) return &m;
  }
  return nullptr;
}

TestCase Case(const TypedFunction& fn, std::vector<Value> args) {
  auto t = SynthesizeTest(fn, args);
  EXPECT_TRUE(t.has_value());
  return *t;
}

TEST(Mutants, ClampHasFirstComparisonFlip) {
  auto clamp = Typed(Dialect::kDJ, testing::kJavaClamp);
  auto ms = GenerateMutants(clamp);
  const Mutant* m = FindByReturn(ms, "a > min ? min : a > max ? max : a");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->op, MutationOperator::kReplaceRelational);
  EXPECT_EQ(m->description, "< -> >");
}

TEST(Mutants, ClampKills) {
  auto clamp = Typed(Dialect::kDJ, testing::kJavaClamp);
  auto ms = GenerateMutants(clamp);
  const Mutant* first = FindByReturn(ms, "a > min ? min : a > max ? max : a");
  const Mutant* second = FindByReturn(ms, "a < min ? min : a < max ? max : a");
  ASSERT_NE(first, nullptr);
  ASSERT_NE(second, nullptr);
  TestCase low = Case(clamp, {Value::F64(-800), Value::F64(-800), Value::F64(-1)});
  TestCase high = Case(clamp, {Value::F64(742), Value::F64(0), Value::F64(0)});
  // Both inputs give the same answer on the first flip.
  EXPECT_FALSE(Kills(low, *first, {}));
  EXPECT_FALSE(Kills(high, *first, {}));
  // The second flip returns a itself on the high input.
  EXPECT_TRUE(Kills(high, *second, {}));
  ExecOutcome o = Execute(second->mutated, high.args);
  EXPECT_DOUBLE_EQ(o.return_value->AsF64(), 742.0);
}

TEST(Mutants, ConstantReturn) {
  auto fn = Typed(Dialect::kDJ, "static int f() { return 0; }");
  auto ms = GenerateMutants(fn);
  std::set<std::int64_t> returned;
  for (const Mutant& m : ms) {
    EXPECT_EQ(m.op, MutationOperator::kReplaceConstant);
    returned.insert(Execute(m.mutated, {}).return_value->AsFixed());
  }
  EXPECT_EQ(ms.size(), 2u);
  EXPECT_EQ(returned, (std::set<std::int64_t>{-1, 1}));
}

TEST(Mutants, PowCountIsFrozen) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  EXPECT_EQ(static_cast<int>(GenerateMutants(pow).size()), kPowMutants);
}

TEST(Mutants, NoSitesGivesEmptyList) {
  auto fn = Typed(Dialect::kDJ, "static void f() { }");
  EXPECT_TRUE(GenerateMutants(fn).empty());
}

TEST(Mutants, SelfRecordedTestNeverKills) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  for (const Mutant& m : GenerateMutants(pow)) {
    TestCase t;
    t.args = {Value::I32(3), Value::I32(5)};
    t.expected = Execute(m.mutated, t.args);
    EXPECT_FALSE(Kills(t, m, {})) << m.description;
  }
}

TEST(Mutants, DistinctTypedAndDeterministic) {
  auto text = testing::ReadFileForTest(testing::DataPath("data/corpus.dj"));
  auto fns = ParseMany(Dialect::kDJ, text);
  ASSERT_TRUE(fns.has_value());
  for (size_t i = 0; i < fns->size(); i += 5) {
    auto fn = Typecheck((*fns)[i]);
    ASSERT_TRUE(fn.has_value());
    auto a = GenerateMutants(*fn);
    auto b = GenerateMutants(*fn);
    ASSERT_EQ(a.size(), b.size());
    std::set<std::string> seen = {Print(fn->def)};
    for (size_t j = 0; j < a.size(); ++j) {
      std::string printed = Print(a[j].mutated.def);
      EXPECT_EQ(printed, Print(b[j].mutated.def));
      EXPECT_TRUE(seen.insert(printed).second) << printed;
      // Type preservation, checked from the text.
      auto reparsed = Parse(Dialect::kDJ, printed);
      ASSERT_TRUE(reparsed.has_value()) << printed;
      auto typed = Typecheck(*reparsed);
      ASSERT_TRUE(typed.has_value()) << printed;
      EXPECT_EQ(typed->def.ret, fn->def.ret);
    }
  }
}

TEST(MutationScore, EmptySuiteScoresZero) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  TestSuite empty;
  auto r = MutationScore(empty, pow, {});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->killed, 0);
  EXPECT_EQ(r->score, 0.0);
  EXPECT_EQ(r->total_mutants, kPowMutants);
}

TEST(MutationScore, NoMutantsIsDistinct) {
  auto fn = Typed(Dialect::kDJ, "static void f() { }");
  TestSuite s;
  EXPECT_FALSE(MutationScore(s, fn, {}).has_value());
}

TEST(MutationScore, MonotoneInCases) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  std::vector<std::vector<Value>> inputs = {{Value::I32(-1), Value::I32(-1)},
                                            {Value::I32(0), Value::I32(1)},
                                            {Value::I32(-13133), Value::I32(2743)},
                                            {Value::I32(1), Value::I32(1)},
                                            {Value::I32(3), Value::I32(6)}};
  TestSuite s;
  double prev = 0.0;
  for (const auto& args : inputs) {
    s.cases.push_back(Case(pow, args));
    auto r = MutationScore(s, pow, {});
    ASSERT_TRUE(r.has_value());
    EXPECT_GE(r->score, prev);
    EXPECT_DOUBLE_EQ(r->score, static_cast<double>(r->killed) / r->total_mutants);
    prev = r->score;
  }
}

TEST(MutationScore, ParallelMatchesSerial) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  TestSuite s;
  s.cases.push_back(Case(pow, {Value::I32(3), Value::I32(6)}));
  s.cases.push_back(Case(pow, {Value::I32(-2), Value::I32(3)}));
  auto a = MutationScore(s, pow, {}, 1);
  auto b = MutationScore(s, pow, {}, 4);
  ASSERT_EQ(a->verdicts.size(), b->verdicts.size());
  for (size_t i = 0; i < a->verdicts.size(); ++i) {
    EXPECT_EQ(a->verdicts[i].killed, b->verdicts[i].killed);
    EXPECT_EQ(a->verdicts[i].killing_case, b->verdicts[i].killing_case);
  }
}

}  // namespace
}  // namespace xlt
