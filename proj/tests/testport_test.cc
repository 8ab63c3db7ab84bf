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

#include "helpers.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"

namespace xlt {
namespace {

using testing::Typed;

const char* kPyPowLoop =
    "def pow(b: int, e: int) -> int:\n"
    "    r: int = 1\n"
    "    while e > 0:\n"
    "        if (e & 1) == 1:\n"
    "            r = r * b\n"
    "        b = b * b\n"
    "        e = e >> 1\n"
    "    return r\n";

TestSuite PowSuite(const TypedFunction& pow) {
  TestSuite s;
  s.id = "pow/suite";
  s.function_id = "pow";
  s.dialect = Dialect::kDJ;
  for (auto args : std::vector<std::vector<Value>>{{Value::I32(-1), Value::I32(-1)},
                                                   {Value::I32(0), Value::I32(1)},
                                                   {Value::I32(-13133), Value::I32(2743)},
                                                   {Value::I32(1), Value::I32(1)}}) {
    s.cases.push_back(*SynthesizeTest(pow, args));
  }
  return s;
}

TEST(Port, IntegersBecomeBigInt) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  auto ported = PortSuite(PowSuite(pow), Dialect::kDP);
  ASSERT_TRUE(ported.has_value());
  const TestCase& c = ported->cases[1];
  EXPECT_EQ(c.args[0].tag(), TypeKind::kBigInt);
  EXPECT_EQ(c.args[1].AsBig(), BigInt(1));
  EXPECT_EQ(c.expected.return_value->tag(), TypeKind::kBigInt);
  EXPECT_EQ(c.expected.return_value->AsBig(), BigInt(0));
  EXPECT_EQ(ported->id, "pow/suite");
  EXPECT_EQ(ported->ported_from, Dialect::kDJ);
}

TEST(Port, ToleranceCarried) {
  auto clamp = Typed(Dialect::kDJ, testing::kJavaClamp);
  TestSuite s;
  s.dialect = Dialect::kDJ;
  s.cases.push_back(*SynthesizeTest(clamp, {Value::F64(742.0), Value::F64(0.0), Value::F64(0.0)}));
  auto dc = PortSuite(s, Dialect::kDC);
  ASSERT_TRUE(dc.has_value());
  EXPECT_EQ(dc->cases[0].float_tol, 0.01);
  EXPECT_EQ(dc->cases[0].expected.return_value->AsF64(), 0.0);
}

TEST(Port, StringsVerbatim) {
  Value s = Value::Str("a\tb\"c\xc3\xa9");
  auto p = PortValue(s, Dialect::kDJ, Dialect::kDP);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->AsStr(), s.AsStr());
}

TEST(Port, SameDialectIsIdentity) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  TestSuite s = PowSuite(pow);
  auto p = PortSuite(s, Dialect::kDJ);
  ASSERT_TRUE(p.has_value());
  EXPECT_FALSE(p->ported_from.has_value());
  for (size_t i = 0; i < s.cases.size(); ++i) {
    EXPECT_TRUE(OutcomesMatch(s.cases[i].expected, p->cases[i].expected, 0.0));
    for (size_t j = 0; j < s.cases[i].args.size(); ++j) {
      EXPECT_TRUE(Identical(s.cases[i].args[j], p->cases[i].args[j]));
    }
  }
}

TEST(Port, HugeIntegersAreUnsupported) {
  Value big = Value::Big(BigInt(1) << 70);
  auto p = PortValue(big, Dialect::kDP, Dialect::kDJ);
  ASSERT_FALSE(p.has_value());
  EXPECT_FALSE(p.error().type.empty());
  auto fits = PortValue(Value::Big(BigInt(1) << 40), Dialect::kDP, Dialect::kDC);
  ASSERT_TRUE(fits.has_value());
  EXPECT_EQ(fits->tag(), TypeKind::kI64);
}

TEST(Port, WrapExpectationsStayWrapped) {
  auto jpow = Typed(Dialect::kDJ, testing::kJavaPow);
  auto ppow = Typed(Dialect::kDP, kPyPowLoop);
  auto ported = PortSuite(PowSuite(jpow), Dialect::kDP);
  ASSERT_TRUE(ported.has_value());
  // Unbounded ints pass the small cases and fail the overflowing one.
  EXPECT_FALSE(PassesSuite(ppow, *ported, {}));
  for (size_t i : {0, 1, 3}) {
    ExecOutcome o = Execute(ppow, ported->cases[i].args);
    EXPECT_TRUE(OutcomesMatch(ported->cases[i].expected, o, 0.01)) << i;
  }
  ExecOutcome o = Execute(ppow, ported->cases[2].args);
  EXPECT_FALSE(OutcomesMatch(ported->cases[2].expected, o, 0.01));
}

TEST(Port, RoundTripBackToSource) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  TestSuite s = PowSuite(pow);
  auto dp = PortSuite(s, Dialect::kDP);
  auto back = PortSuite(*dp, Dialect::kDJ);
  ASSERT_TRUE(back.has_value());
  for (size_t i = 0; i < s.cases.size(); ++i) {
    for (size_t j = 0; j < s.cases[i].args.size(); ++j) {
      EXPECT_TRUE(Identical(s.cases[i].args[j], back->cases[i].args[j]));
    }
  }
  EXPECT_TRUE(PassesSuite(pow, *back, {}));
}

}  // namespace
}  // namespace xlt
