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

#include <random>

#include "helpers.h"
#include "xlt/ast.h"
#include "xlt/parse.h"

namespace xlt {
namespace {

const Expr& ReturnExpr(const FunctionDef& fn) { return fn.body.back().exprs.at(0); }

FunctionDef ParseOk(Dialect d, const std::string& src) {
  auto fn = Parse(d, src);
  EXPECT_TRUE(fn.has_value()) << (fn ? "" : fn.error().ToString());
  return fn ? *fn : FunctionDef{};
}

Expr EqBitAnd() {
  return Expr::Binary(BinaryOp::kEq, Expr::Binary(BinaryOp::kBitAnd, Expr::Var("x"), Expr::IntLit(1)),
                      Expr::IntLit(1));
}

TEST(Parse, PythonIsOddGroupsBitAndFirst) {
  FunctionDef fn = ParseOk(Dialect::kDP, testing::kPyIsOdd);
  EXPECT_TRUE(StructurallyEqual(ReturnExpr(fn), EqBitAnd()));
}

TEST(Parse, JavaIsOddGroupsEqualityFirst) {
  FunctionDef fn = ParseOk(Dialect::kDJ, "static boolean is_odd(int x) { return x & 1 == 1; }");
  Expr want = Expr::Binary(BinaryOp::kBitAnd, Expr::Var("x"),
                           Expr::Binary(BinaryOp::kEq, Expr::IntLit(1), Expr::IntLit(1)));
  EXPECT_TRUE(StructurallyEqual(ReturnExpr(fn), want));
}

TEST(Parse, ClampNestedTernary) {
  FunctionDef fn = ParseOk(Dialect::kDJ, testing::kJavaClamp);
  Expr inner = Expr::Ternary(Expr::Binary(BinaryOp::kGt, Expr::Var("a"), Expr::Var("max")), Expr::Var("max"),
                             Expr::Var("a"));
  Expr want = Expr::Ternary(Expr::Binary(BinaryOp::kLt, Expr::Var("a"), Expr::Var("min")), Expr::Var("min"),
                            std::move(inner));
  EXPECT_TRUE(StructurallyEqual(ReturnExpr(fn), want));
}

TEST(Parse, ErrorCarriesPosition) {
  auto fn = Parse(Dialect::kDJ, "static int f(int x) {\n  return x +;\n}");
  ASSERT_FALSE(fn.has_value());
  EXPECT_EQ(fn.error().line, 2);
  EXPECT_GT(fn.error().col, 0);
  EXPECT_FALSE(fn.error().expected.empty());
}

TEST(Parse, PythonComparisonChainsAreRejected) {
  EXPECT_FALSE(Parse(Dialect::kDP, "def f(x: int) -> bool:\n    return 1 < x < 3\n").has_value());
}

TEST(Print, MinimalParensPerDialect) {
  EXPECT_EQ(PrintExpr(EqBitAnd(), Dialect::kDJ), "( x & 1 ) == 1");
  EXPECT_EQ(PrintExpr(EqBitAnd(), Dialect::kDC), "( x & 1 ) == 1");
  EXPECT_EQ(PrintExpr(EqBitAnd(), Dialect::kDP), "x & 1 == 1");
}

TEST(Print, SameTextMeansDifferentTreesAcrossDialects) {
  std::string dp_text = "static boolean f(int x) { return " + PrintExpr(EqBitAnd(), Dialect::kDP) + "; }";
  FunctionDef reparsed = ParseOk(Dialect::kDJ, dp_text);
  EXPECT_FALSE(StructurallyEqual(ReturnExpr(reparsed), EqBitAnd()));
}

TEST(Print, TokensAreSpaceSeparated) {
  FunctionDef fn = ParseOk(Dialect::kDJ, testing::kJavaClamp);
  std::string text = Print(fn);
  EXPECT_NE(text.find("a < min ? min : a > max ? max : a"), std::string::npos) << text;
  EXPECT_EQ(TokenCount(Dialect::kDJ, "a < min"), 3);
}

// Random well-formed expressions over int variables x and y.
class ExprGen {
 public:
  ExprGen(Dialect d, std::uint64_t seed) : profile_(ProfileOf(d)), rng_(seed) {}

  Expr Make(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
    switch (pick(rng_)) {
      case 0:
        return Expr::IntLit(std::uniform_int_distribution<int>(0, 99)(rng_));
      case 1:
        return Expr::Var(Coin() ? "x" : "y");
      case 2:
        return Expr::Unary(Coin() ? UnaryOp::kNeg : UnaryOp::kBitNot, Make(depth - 1));
      case 3:
        return Expr::Ternary(Make(depth - 1), Make(depth - 1), Make(depth - 1));
      case 4:
        return Expr::Call(Coin() ? Builtin::kMin : Builtin::kMax, {Make(depth - 1), Make(depth - 1)});
      default: {
        std::vector<BinaryOp> ops;
        for (BinaryOp op : kBinaryOps) {
          if (profile_.Supports(op)) ops.push_back(op);
        }
        BinaryOp op = ops[std::uniform_int_distribution<size_t>(0, ops.size() - 1)(rng_)];
        return Expr::Binary(op, Make(depth - 1), Make(depth - 1));
      }
    }
  }

 private:
  bool Coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

  const SemanticsProfile& profile_;
  std::mt19937_64 rng_;
};

FunctionDef Wrap(Dialect d, Expr e) {
  FunctionDef fn;
  fn.name = "f";
  fn.dialect = d;
  Type t = Type::Of(ProfileOf(d).default_int);
  fn.params = {{"x", t}, {"y", t}};
  fn.ret = t;
  fn.body.push_back(Stmt::Decl("z", t, Expr::Var("x")));
  fn.body.push_back(Stmt::If(Expr::Var("y"), {Stmt::Assign(Expr::Var("z"), Expr::Var("y"), BinaryOp::kAdd)},
                             {Stmt::Assign(Expr::Var("z"), Expr::IntLit(2))}));
  fn.body.push_back(Stmt::While(Expr::Var("z"), {Stmt::Break()}));
  fn.body.push_back(Stmt::Return(std::move(e)));
  return fn;
}

TEST(Print, RoundTripOnRandomTrees) {
  for (Dialect d : kDialects) {
    ExprGen gen(d, 7 + static_cast<int>(d));
    for (int i = 0; i < 400; ++i) {
      FunctionDef fn = Wrap(d, gen.Make(4));
      std::string text = Print(fn);
      auto back = Parse(d, text);
      ASSERT_TRUE(back.has_value()) << back.error().ToString() << "\n" << text;
      EXPECT_TRUE(StructurallyEqual(*back, fn)) << text;
      EXPECT_EQ(Print(*back), text);
    }
  }
}

TEST(Print, RoundTripOnCorpus) {
  auto text = testing::ReadFileForTest(testing::DataPath("data/corpus.dj"));
  auto fns = ParseMany(Dialect::kDJ, text);
  ASSERT_TRUE(fns.has_value());
  ASSERT_GE(fns->size(), 200u);
  for (const FunctionDef& fn : *fns) {
    std::string printed = Print(fn);
    auto back = Parse(Dialect::kDJ, printed);
    ASSERT_TRUE(back.has_value()) << printed;
    EXPECT_TRUE(StructurallyEqual(*back, fn)) << printed;
  }
}

}  // namespace
}  // namespace xlt
