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

#ifndef XLT_AST_H_
#define XLT_AST_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xlt/dialect.h"
#include "xlt/value.h"

namespace xlt {

struct SourcePos {
  int line = 0;
  int col = 0;
};

enum class ExprKind : std::uint8_t {
  kIntLit,
  kFloatLit,
  kBoolLit,
  kStrLit,
  kExtreme,  // INT_MAX / INT_MIN style sentinels
  kVar,
  kUnary,
  kBinary,
  kTernary,  // kids: cond, then, else
  kCall,
  kIndex,  // kids: sequence, index
  kCast,
};

enum class Builtin : std::uint8_t { kLen, kMin, kMax, kAbs, kPush, kPop, kPeek, kPrint };
enum class Extreme : std::uint8_t { kMax, kMin };

std::string_view BuiltinName(Builtin b);
int BuiltinArity(Builtin b);

struct Expr {
  ExprKind kind = ExprKind::kIntLit;
  BigInt int_value;
  double float_value = 0.0;
  bool bool_value = false;
  std::string text;  // string literal contents or variable name
  Extreme extreme = Extreme::kMax;
  UnaryOp unary = UnaryOp::kNeg;
  BinaryOp binary = BinaryOp::kAdd;
  Builtin builtin = Builtin::kLen;
  Type cast_type;
  std::vector<Expr> kids;
  SourcePos pos;

  // Filled by typecheck.
  Type type;
  int slot = -1;
  int id = -1;

  static Expr IntLit(BigInt v);
  static Expr FloatLit(double v);
  static Expr BoolLit(bool v);
  static Expr StrLit(std::string v);
  static Expr ExtremeLit(Extreme e);
  static Expr Var(std::string name);
  static Expr Unary(UnaryOp op, Expr operand);
  static Expr Binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr Ternary(Expr cond, Expr then_e, Expr else_e);
  static Expr Call(Builtin b, std::vector<Expr> args);
  static Expr Index(Expr seq, Expr index);
  static Expr Cast(Type to, Expr operand);
};

enum class StmtKind : std::uint8_t {
  kDecl,     // exprs: [init]
  kAssign,   // exprs: [target, value]
  kIf,       // exprs: [cond]; body; orelse
  kWhile,    // exprs: [cond]; body
  kReturn,   // exprs: [] or [value]
  kExprStmt, // exprs: [call]
  kBreak,
  kContinue,
};

struct Stmt {
  StmtKind kind = StmtKind::kExprStmt;
  std::string name;  // declared variable
  Type decl_type;
  std::optional<BinaryOp> compound;  // `op=` assignment
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> orelse;
  SourcePos pos;

  int slot = -1;
  int id = -1;

  static Stmt Decl(std::string name, Type type, Expr init);
  static Stmt Assign(Expr target, Expr value, std::optional<BinaryOp> compound = std::nullopt);
  static Stmt If(Expr cond, std::vector<Stmt> body, std::vector<Stmt> orelse = {});
  static Stmt While(Expr cond, std::vector<Stmt> body);
  static Stmt Return(std::optional<Expr> value);
  static Stmt ExprStmt(Expr call);
  static Stmt Break();
  static Stmt Continue();
};

struct Param {
  std::string name;
  Type type;
};

struct FunctionDef {
  std::string name;
  Dialect dialect = Dialect::kDJ;
  std::vector<Param> params;
  Type ret;
  std::vector<Stmt> body;
  SourcePos pos;
};

// Structural equality ignoring positions and typecheck annotations.
bool StructurallyEqual(const Expr& a, const Expr& b);
bool StructurallyEqual(const Stmt& a, const Stmt& b);
bool StructurallyEqual(const FunctionDef& a, const FunctionDef& b);

// A node reached by a preorder walk: exactly one of stmt/expr is set.
struct NodeRef {
  Stmt* stmt = nullptr;
  Expr* expr = nullptr;
  int id = 0;        // preorder index
  std::string path;  // e.g. "body[1].cond.rhs"
};

// Preorder over statements then their expressions, then nested blocks. The
// index a node receives here is its site location everywhere in the project.
void ForEachNode(FunctionDef& fn, const std::function<void(NodeRef&)>& visit);
int CountNodes(const FunctionDef& fn);
// Applies `rewrite` in place to the node at preorder index `id`. Returns false
// when no such node exists.
bool RewriteNode(FunctionDef& fn, int id, const std::function<void(NodeRef&)>& rewrite);

}  // namespace xlt

#endif  // XLT_AST_H_
