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

#include "xlt/ast.h"

#include <cstring>

namespace xlt {

std::string_view BuiltinName(Builtin b) {
  switch (b) {
    case Builtin::kLen: return "len";
    case Builtin::kMin: return "min";
    case Builtin::kMax: return "max";
    case Builtin::kAbs: return "abs";
    case Builtin::kPush: return "push";
    case Builtin::kPop: return "pop";
    case Builtin::kPeek: return "peek";
    case Builtin::kPrint: return "print";
  }
  return "?";
}

int BuiltinArity(Builtin b) {
  switch (b) {
    case Builtin::kMin:
    case Builtin::kMax:
    case Builtin::kPush:
      return 2;
    default:
      return 1;
  }
}

Expr Expr::IntLit(BigInt v) {
  Expr e;
  e.kind = ExprKind::kIntLit;
  e.int_value = std::move(v);
  return e;
}

Expr Expr::FloatLit(double v) {
  Expr e;
  e.kind = ExprKind::kFloatLit;
  e.float_value = v;
  return e;
}

Expr Expr::BoolLit(bool v) {
  Expr e;
  e.kind = ExprKind::kBoolLit;
  e.bool_value = v;
  return e;
}

Expr Expr::StrLit(std::string v) {
  Expr e;
  e.kind = ExprKind::kStrLit;
  e.text = std::move(v);
  return e;
}

Expr Expr::ExtremeLit(Extreme x) {
  Expr e;
  e.kind = ExprKind::kExtreme;
  e.extreme = x;
  return e;
}

Expr Expr::Var(std::string name) {
  Expr e;
  e.kind = ExprKind::kVar;
  e.text = std::move(name);
  return e;
}

Expr Expr::Unary(UnaryOp op, Expr operand) {
  Expr e;
  e.kind = ExprKind::kUnary;
  e.unary = op;
  e.kids.push_back(std::move(operand));
  return e;
}

Expr Expr::Binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.binary = op;
  e.kids.push_back(std::move(lhs));
  e.kids.push_back(std::move(rhs));
  return e;
}

Expr Expr::Ternary(Expr cond, Expr then_e, Expr else_e) {
  Expr e;
  e.kind = ExprKind::kTernary;
  e.kids.push_back(std::move(cond));
  e.kids.push_back(std::move(then_e));
  e.kids.push_back(std::move(else_e));
  return e;
}

Expr Expr::Call(Builtin b, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.builtin = b;
  e.kids = std::move(args);
  return e;
}

Expr Expr::Index(Expr seq, Expr index) {
  Expr e;
  e.kind = ExprKind::kIndex;
  e.kids.push_back(std::move(seq));
  e.kids.push_back(std::move(index));
  return e;
}

Expr Expr::Cast(Type to, Expr operand) {
  Expr e;
  e.kind = ExprKind::kCast;
  e.cast_type = to;
  e.kids.push_back(std::move(operand));
  return e;
}

Stmt Stmt::Decl(std::string name, Type type, Expr init) {
  Stmt s;
  s.kind = StmtKind::kDecl;
  s.name = std::move(name);
  s.decl_type = type;
  s.exprs.push_back(std::move(init));
  return s;
}

Stmt Stmt::Assign(Expr target, Expr value, std::optional<BinaryOp> compound) {
  Stmt s;
  s.kind = StmtKind::kAssign;
  s.compound = compound;
  s.exprs.push_back(std::move(target));
  s.exprs.push_back(std::move(value));
  return s;
}

Stmt Stmt::If(Expr cond, std::vector<Stmt> body, std::vector<Stmt> orelse) {
  Stmt s;
  s.kind = StmtKind::kIf;
  s.exprs.push_back(std::move(cond));
  s.body = std::move(body);
  s.orelse = std::move(orelse);
  return s;
}

Stmt Stmt::While(Expr cond, std::vector<Stmt> body) {
  Stmt s;
  s.kind = StmtKind::kWhile;
  s.exprs.push_back(std::move(cond));
  s.body = std::move(body);
  return s;
}

Stmt Stmt::Return(std::optional<Expr> value) {
  Stmt s;
  s.kind = StmtKind::kReturn;
  if (value) s.exprs.push_back(std::move(*value));
  return s;
}

Stmt Stmt::ExprStmt(Expr call) {
  Stmt s;
  s.kind = StmtKind::kExprStmt;
  s.exprs.push_back(std::move(call));
  return s;
}

Stmt Stmt::Break() {
  Stmt s;
  s.kind = StmtKind::kBreak;
  return s;
}

Stmt Stmt::Continue() {
  Stmt s;
  s.kind = StmtKind::kContinue;
  return s;
}

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case ExprKind::kIntLit:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::kFloatLit:
      if (std::memcmp(&a.float_value, &b.float_value, sizeof(double)) != 0) return false;
      break;
    case ExprKind::kBoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::kStrLit:
    case ExprKind::kVar:
      if (a.text != b.text) return false;
      break;
    case ExprKind::kExtreme:
      if (a.extreme != b.extreme) return false;
      break;
    case ExprKind::kUnary:
      if (a.unary != b.unary) return false;
      break;
    case ExprKind::kBinary:
      if (a.binary != b.binary) return false;
      break;
    case ExprKind::kCall:
      if (a.builtin != b.builtin) return false;
      break;
    case ExprKind::kCast:
      if (a.cast_type != b.cast_type) return false;
      break;
    case ExprKind::kTernary:
    case ExprKind::kIndex:
      break;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!StructurallyEqual(a.kids[i], b.kids[i])) return false;
  }
  return true;
}

namespace {

bool BlocksEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool StructurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.decl_type != b.decl_type ||
      a.compound != b.compound || a.exprs.size() != b.exprs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.exprs.size(); ++i) {
    if (!StructurallyEqual(a.exprs[i], b.exprs[i])) return false;
  }
  return BlocksEqual(a.body, b.body) && BlocksEqual(a.orelse, b.orelse);
}

bool StructurallyEqual(const FunctionDef& a, const FunctionDef& b) {
  if (a.name != b.name || a.dialect != b.dialect || a.ret != b.ret ||
      a.params.size() != b.params.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type) {
      return false;
    }
  }
  return BlocksEqual(a.body, b.body);
}

namespace {

std::string_view KidLabel(const Expr& e, std::size_t i) {
  switch (e.kind) {
    case ExprKind::kBinary:
      return i == 0 ? "lhs" : "rhs";
    case ExprKind::kTernary:
      return i == 0 ? "cond" : (i == 1 ? "then" : "else");
    case ExprKind::kIndex:
      return i == 0 ? "seq" : "index";
    case ExprKind::kCall:
      return i == 0 ? "arg0" : "arg1";
    default:
      return "operand";
  }
}

std::string_view ExprSlotLabel(const Stmt& s, std::size_t i) {
  switch (s.kind) {
    case StmtKind::kDecl:
      return "init";
    case StmtKind::kAssign:
      return i == 0 ? "target" : "value";
    case StmtKind::kIf:
    case StmtKind::kWhile:
      return "cond";
    case StmtKind::kReturn:
      return "value";
    default:
      return "call";
  }
}

class Walker {
 public:
  explicit Walker(const std::function<void(NodeRef&)>& visit) : visit_(visit) {}

  void Block(std::vector<Stmt>& block, const std::string& prefix) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      StmtNode(block[i], prefix + "[" + std::to_string(i) + "]");
    }
  }

  int count() const { return next_; }

 private:
  void StmtNode(Stmt& s, const std::string& path) {
    NodeRef ref{&s, nullptr, next_++, path};
    visit_(ref);
    for (std::size_t i = 0; i < s.exprs.size(); ++i) {
      ExprNode(s.exprs[i], path + "." + std::string(ExprSlotLabel(s, i)));
    }
    Block(s.body, path + ".body");
    Block(s.orelse, path + ".else");
  }

  void ExprNode(Expr& e, const std::string& path) {
    NodeRef ref{nullptr, &e, next_++, path};
    visit_(ref);
    for (std::size_t i = 0; i < e.kids.size(); ++i) {
      ExprNode(e.kids[i], path + "." + std::string(KidLabel(e, i)));
    }
  }

  const std::function<void(NodeRef&)>& visit_;
  int next_ = 0;
};

}  // namespace

void ForEachNode(FunctionDef& fn, const std::function<void(NodeRef&)>& visit) {
  Walker walker(visit);
  walker.Block(fn.body, "body");
}

int CountNodes(const FunctionDef& fn) {
  // The walker needs mutable access only to hand out pointers.
  FunctionDef& mutable_fn = const_cast<FunctionDef&>(fn);
  int count = 0;
  ForEachNode(mutable_fn, [&](NodeRef&) { ++count; });
  return count;
}

bool RewriteNode(FunctionDef& fn, int id, const std::function<void(NodeRef&)>& rewrite) {
  bool found = false;
  ForEachNode(fn, [&](NodeRef& ref) {
    if (ref.id == id && !found) {
      found = true;
      rewrite(ref);
    }
  });
  return found;
}

}  // namespace xlt
