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

#include "xlt/typecheck.h"

#include <map>
#include <set>

namespace xlt {

std::string TypeErrorReport::ToString() const {
  std::string out = "type error at " + path + " (" + std::to_string(pos.line) + ":" +
                    std::to_string(pos.col) + "): " + message;
  if (!expected.empty() || !found.empty()) {
    out += " [expected " + expected + ", found " + found + "]";
  }
  return out;
}

TypeKind PromoteInt(TypeKind a, TypeKind b) {
  if (a == TypeKind::kI64 || b == TypeKind::kI64) return TypeKind::kI64;
  if (a == TypeKind::kI32 || b == TypeKind::kI32) return TypeKind::kI32;
  return TypeKind::kBigInt;
}

bool DialectHasType(Dialect dialect, const Type& type) {
  const SemanticsProfile& p = ProfileOf(dialect);
  auto scalar_ok = [&](TypeKind k) {
    if (k == TypeKind::kBigInt) return p.has_bigint;
    return k != TypeKind::kVoid && !IsSeqKind(k);
  };
  if (type.kind == TypeKind::kVoid) return true;
  if (type.kind == TypeKind::kArr) return p.has_arrays && scalar_ok(type.elem);
  if (type.kind == TypeKind::kLst) return scalar_ok(type.elem);
  return scalar_ok(type.kind);
}

namespace {

struct CheckFailure {
  TypeErrorReport report;
};

enum class Assignability { kNo, kYes, kWiden };

class Checker {
 public:
  Checker(FunctionDef& fn, const std::set<int>& widened)
      : fn_(fn), profile_(ProfileOf(fn.dialect)), widened_(widened) {}

  void Run() {
    scopes_.emplace_back();
    for (const Param& p : fn_.params) {
      if (p.type.kind == TypeKind::kVoid || !DialectHasType(fn_.dialect, p.type)) {
        Fail(-1, "parameter type not available in dialect", "", TypeDebugName(p.type));
      }
      if (Lookup(p.name) >= 0) Fail(-1, "duplicate parameter '" + p.name + "'");
      Declare(p.name, p.type);
    }
    if (!DialectHasType(fn_.dialect, fn_.ret)) {
      Fail(-1, "return type not available in dialect", "", TypeDebugName(fn_.ret));
    }
    Block(fn_.body);
  }

  const std::vector<Type>& slot_types() const { return slot_types_; }
  const std::vector<Type>& declared() const { return declared_; }
  const std::set<int>& widen_requests() const { return widen_requests_; }

 private:
  [[noreturn]] void Fail(int node_id, std::string message, std::string expected = "",
                         std::string found = "") {
    TypeErrorReport r;
    r.node_id = node_id;
    r.message = std::move(message);
    r.expected = std::move(expected);
    r.found = std::move(found);
    throw CheckFailure{std::move(r)};
  }

  int Lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    return -1;
  }

  int Declare(const std::string& name, const Type& type) {
    int slot = static_cast<int>(slot_types_.size());
    declared_.push_back(type);
    Type effective = type;
    if (widened_.count(slot) != 0) effective = Type::Of(TypeKind::kF64);
    slot_types_.push_back(effective);
    scopes_.back()[name] = slot;
    return slot;
  }

  bool IsPy() const { return fn_.dialect == Dialect::kDP; }

  Assignability Assignable(const Type& to, const Type& from, bool var_target) const {
    if (to == from) return Assignability::kYes;
    if (to.IsNumeric() && from.IsNumeric()) {
      if (IsPy()) {
        if (to.kind == TypeKind::kF64 || from.IsInt()) return Assignability::kYes;
        return var_target ? Assignability::kWiden : Assignability::kNo;
      }
      if (to.kind == TypeKind::kI64 && from.kind == TypeKind::kI32) return Assignability::kYes;
      if (to.kind == TypeKind::kF64) return Assignability::kYes;
      return Assignability::kNo;
    }
    return Assignability::kNo;
  }

  void Block(std::vector<Stmt>& block) {
    if (!IsPy()) scopes_.emplace_back();
    for (Stmt& s : block) StmtNode(s);
    if (!IsPy()) scopes_.pop_back();
  }

  void AssignInto(int node_id, int slot, const Type& value_type) {
    Assignability a = Assignable(slot_types_[slot], value_type, /*var_target=*/true);
    if (a == Assignability::kNo) {
      Fail(node_id, "incompatible assignment", TypeDebugName(slot_types_[slot]),
           TypeDebugName(value_type));
    }
    if (a == Assignability::kWiden) widen_requests_.insert(slot);
  }

  void StmtNode(Stmt& s) {
    switch (s.kind) {
      case StmtKind::kDecl: {
        if (s.decl_type.kind == TypeKind::kVoid || !DialectHasType(fn_.dialect, s.decl_type)) {
          Fail(s.id, "declared type not available in dialect", "", TypeDebugName(s.decl_type));
        }
        Type init = ExprNode(s.exprs[0]);
        int existing = Lookup(s.name);
        if (existing >= 0) {
          // DP variables are function scoped; re-annotating with the same type
          // is an assignment.
          if (!IsPy() || declared_[existing] != s.decl_type) {
            Fail(s.id, "redeclaration of '" + s.name + "'");
          }
          s.slot = existing;
        } else {
          s.slot = Declare(s.name, s.decl_type);
        }
        AssignInto(s.id, s.slot, init);
        break;
      }
      case StmtKind::kAssign: {
        Expr& target = s.exprs[0];
        if (target.kind != ExprKind::kVar && target.kind != ExprKind::kIndex) {
          Fail(s.id, "assignment target must be a variable or an index");
        }
        Type target_type = ExprNode(target);
        if (target.kind == ExprKind::kIndex && target.kids[0].type.kind == TypeKind::kStr) {
          Fail(s.id, "strings are immutable");
        }
        Type value_type = ExprNode(s.exprs[1]);
        if (s.compound) {
          value_type = BinaryType(s.id, *s.compound, target_type, value_type);
          if (!IsPy() && target_type.IsNumeric() && value_type.IsNumeric()) {
            // Compound assignment narrows implicitly in the C family.
            break;
          }
        }
        if (target.kind == ExprKind::kVar) {
          AssignInto(s.id, target.slot, value_type);
        } else if (Assignable(target_type, value_type, false) == Assignability::kNo) {
          Fail(s.id, "incompatible element assignment", TypeDebugName(target_type),
               TypeDebugName(value_type));
        }
        break;
      }
      case StmtKind::kIf: {
        RequireBool(s.exprs[0]);
        Block(s.body);
        Block(s.orelse);
        break;
      }
      case StmtKind::kWhile: {
        RequireBool(s.exprs[0]);
        ++loop_depth_;
        Block(s.body);
        --loop_depth_;
        break;
      }
      case StmtKind::kReturn: {
        if (s.exprs.empty()) {
          if (fn_.ret.kind != TypeKind::kVoid) Fail(s.id, "missing return value");
          break;
        }
        if (fn_.ret.kind == TypeKind::kVoid) Fail(s.id, "void function returns a value");
        Type t = ExprNode(s.exprs[0]);
        bool ok = Assignable(fn_.ret, t, false) != Assignability::kNo ||
                  (IsPy() && fn_.ret.IsNumeric() && t.IsNumeric());
        if (!ok) Fail(s.id, "incompatible return", TypeDebugName(fn_.ret), TypeDebugName(t));
        break;
      }
      case StmtKind::kExprStmt: {
        if (s.exprs[0].kind != ExprKind::kCall) Fail(s.id, "expression statement must be a call");
        ExprNode(s.exprs[0]);
        break;
      }
      case StmtKind::kBreak:
      case StmtKind::kContinue:
        if (loop_depth_ == 0) Fail(s.id, "break/continue outside loop");
        break;
    }
  }

  void RequireBool(Expr& e) {
    Type t = ExprNode(e);
    if (t.kind != TypeKind::kBool) Fail(e.id, "condition must be boolean", "bool", TypeDebugName(t));
  }

  Type Numeric(TypeKind a, TypeKind b) const {
    if (a == TypeKind::kF64 || b == TypeKind::kF64) return Type::Of(TypeKind::kF64);
    return Type::Of(PromoteInt(a, b));
  }

  Type BinaryType(int id, BinaryOp op, const Type& l, const Type& r) {
    if (!profile_.Supports(op)) {
      Fail(id, "operator '" + std::string(BinaryOpName(op)) + "' not available in dialect");
    }
    auto mismatch = [&]() {
      Fail(id, std::string(BinaryOpName(op)) + ": operand types", TypeDebugName(l),
           TypeDebugName(r));
    };
    if (IsArithmetic(op)) {
      if (op == BinaryOp::kAdd && l.kind == TypeKind::kStr && r.kind == TypeKind::kStr) {
        return Type::Of(TypeKind::kStr);
      }
      if (!l.IsNumeric() || !r.IsNumeric()) mismatch();
      if (op == BinaryOp::kDiv && profile_.true_division) return Type::Of(TypeKind::kF64);
      return Numeric(l.kind, r.kind);
    }
    if (IsShift(op)) {
      if (!l.IsInt() || !r.IsInt()) mismatch();
      return IsPy() ? Type::Of(PromoteInt(l.kind, r.kind)) : l;
    }
    if (IsBitwise(op)) {
      if (l.IsInt() && r.IsInt()) return Type::Of(PromoteInt(l.kind, r.kind));
      if (l.kind == TypeKind::kBool && r.kind == TypeKind::kBool) return l;
      mismatch();
    }
    if (IsComparison(op)) {
      bool ok = (l.IsNumeric() && r.IsNumeric()) ||
                (l.kind == r.kind && !l.IsSeq() && l.kind != TypeKind::kVoid &&
                 (op == BinaryOp::kEq || op == BinaryOp::kNe || l.kind == TypeKind::kStr));
      if (!ok) mismatch();
      return Type::Of(TypeKind::kBool);
    }
    // logical
    if (l.kind != TypeKind::kBool || r.kind != TypeKind::kBool) mismatch();
    return Type::Of(TypeKind::kBool);
  }

  Type ExprNode(Expr& e) {
    e.type = ExprType(e);
    return e.type;
  }

  Type ExprType(Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit: {
        if (IsPy()) return Type::Of(TypeKind::kBigInt);
        if (e.int_value >= INT32_MIN && e.int_value <= INT32_MAX) return Type::Of(TypeKind::kI32);
        if (e.int_value >= INT64_MIN && e.int_value <= INT64_MAX) return Type::Of(TypeKind::kI64);
        Fail(e.id, "integer literal out of range");
      }
      case ExprKind::kFloatLit:
        return Type::Of(TypeKind::kF64);
      case ExprKind::kBoolLit:
        return Type::Of(TypeKind::kBool);
      case ExprKind::kStrLit:
        return Type::Of(TypeKind::kStr);
      case ExprKind::kExtreme:
        return Type::Of(profile_.default_int);
      case ExprKind::kVar: {
        int slot = Lookup(e.text);
        if (slot < 0) Fail(e.id, "undefined variable '" + e.text + "'");
        e.slot = slot;
        return slot_types_[slot];
      }
      case ExprKind::kUnary: {
        Type t = ExprNode(e.kids[0]);
        switch (e.unary) {
          case UnaryOp::kNeg:
            if (!t.IsNumeric()) Fail(e.id, "negation of non-number", "number", TypeDebugName(t));
            return t;
          case UnaryOp::kBitNot:
            if (!t.IsInt()) Fail(e.id, "bitwise not of non-integer", "int", TypeDebugName(t));
            return t;
          case UnaryOp::kNot:
            if (t.kind != TypeKind::kBool) Fail(e.id, "logical not", "bool", TypeDebugName(t));
            return t;
        }
        return t;
      }
      case ExprKind::kBinary: {
        Type l = ExprNode(e.kids[0]);
        Type r = ExprNode(e.kids[1]);
        return BinaryType(e.id, e.binary, l, r);
      }
      case ExprKind::kTernary: {
        RequireBool(e.kids[0]);
        Type a = ExprNode(e.kids[1]);
        Type b = ExprNode(e.kids[2]);
        if (a == b && a.kind != TypeKind::kVoid) return a;
        if (a.IsNumeric() && b.IsNumeric()) return Numeric(a.kind, b.kind);
        Fail(e.id, "conditional branches differ", TypeDebugName(a), TypeDebugName(b));
      }
      case ExprKind::kCall:
        return CallType(e);
      case ExprKind::kIndex: {
        Type seq = ExprNode(e.kids[0]);
        Type idx = ExprNode(e.kids[1]);
        if (!idx.IsInt()) Fail(e.id, "index must be an integer", "int", TypeDebugName(idx));
        if (seq.kind == TypeKind::kStr) return seq;
        if (!seq.IsSeq()) Fail(e.id, "indexing a non-sequence", "sequence", TypeDebugName(seq));
        return Type::Of(seq.elem);
      }
      case ExprKind::kCast: {
        Type t = ExprNode(e.kids[0]);
        if (!t.IsNumeric() || !e.cast_type.IsNumeric() ||
            !DialectHasType(fn_.dialect, e.cast_type)) {
          Fail(e.id, "invalid cast", TypeDebugName(e.cast_type), TypeDebugName(t));
        }
        return e.cast_type;
      }
    }
    Fail(e.id, "unknown expression");
  }

  Type CallType(Expr& e) {
    if (static_cast<int>(e.kids.size()) != BuiltinArity(e.builtin)) {
      Fail(e.id, std::string(BuiltinName(e.builtin)) + ": wrong number of arguments",
           std::to_string(BuiltinArity(e.builtin)), std::to_string(e.kids.size()));
    }
    std::vector<Type> args;
    for (Expr& k : e.kids) args.push_back(ExprNode(k));
    const std::string name(BuiltinName(e.builtin));
    switch (e.builtin) {
      case Builtin::kLen:
        if (!args[0].IsSeq() && args[0].kind != TypeKind::kStr) {
          Fail(e.id, name + " of non-sequence", "sequence", TypeDebugName(args[0]));
        }
        return Type::Of(profile_.default_int);
      case Builtin::kMin:
      case Builtin::kMax:
        if (!args[0].IsNumeric() || !args[1].IsNumeric()) {
          Fail(e.id, name + " of non-numbers", TypeDebugName(args[0]), TypeDebugName(args[1]));
        }
        return Numeric(args[0].kind, args[1].kind);
      case Builtin::kAbs:
        if (!args[0].IsNumeric()) Fail(e.id, name + " of non-number", "number", TypeDebugName(args[0]));
        return args[0];
      case Builtin::kPush:
        if (args[0].kind != TypeKind::kLst) Fail(e.id, name + " needs a list", "lst", TypeDebugName(args[0]));
        if (Assignable(Type::Of(args[0].elem), args[1], false) == Assignability::kNo) {
          Fail(e.id, name + " element type", TypeDebugName(Type::Of(args[0].elem)),
               TypeDebugName(args[1]));
        }
        return Type::Of(TypeKind::kVoid);
      case Builtin::kPop:
      case Builtin::kPeek:
        if (args[0].kind != TypeKind::kLst) Fail(e.id, name + " needs a list", "lst", TypeDebugName(args[0]));
        return Type::Of(args[0].elem);
      case Builtin::kPrint:
        if (args[0].kind == TypeKind::kVoid) Fail(e.id, "print of void");
        return Type::Of(TypeKind::kVoid);
    }
    Fail(e.id, "unknown builtin");
  }

  FunctionDef& fn_;
  const SemanticsProfile& profile_;
  const std::set<int>& widened_;
  std::vector<std::map<std::string, int>> scopes_;
  std::vector<Type> slot_types_;
  std::vector<Type> declared_;
  std::set<int> widen_requests_;
  int loop_depth_ = 0;
};

// Void-typed calls may only appear as statements.
void CheckVoidUses(FunctionDef& fn) {
  ForEachNode(fn, [](NodeRef& ref) {
    if (ref.stmt != nullptr) return;
    for (const Expr& k : ref.expr->kids) {
      if (k.type.kind == TypeKind::kVoid) {
        TypeErrorReport r;
        r.node_id = k.id;
        r.message = "void value used in an expression";
        throw CheckFailure{r};
      }
    }
  });
  std::function<void(std::vector<Stmt>&)> block = [&](std::vector<Stmt>& stmts) {
    for (Stmt& s : stmts) {
      if (s.kind != StmtKind::kExprStmt) {
        for (const Expr& e : s.exprs) {
          if (e.type.kind == TypeKind::kVoid) {
            TypeErrorReport r;
            r.node_id = e.id;
            r.message = "void value used in a statement";
            throw CheckFailure{r};
          }
        }
      }
      block(s.body);
      block(s.orelse);
    }
  };
  block(fn.body);
}

}  // namespace

Expected<TypedFunction, TypeErrorReport> Typecheck(const FunctionDef& fn) {
  TypedFunction out;
  out.def = fn;
  std::vector<int> decisions;
  std::map<int, std::pair<std::string, SourcePos>> paths;
  int count = 0;
  ForEachNode(out.def, [&](NodeRef& ref) {
    if (ref.stmt != nullptr) {
      ref.stmt->id = ref.id;
      ref.stmt->slot = -1;
      paths[ref.id] = {ref.path, ref.stmt->pos};
      if (ref.stmt->kind == StmtKind::kIf || ref.stmt->kind == StmtKind::kWhile) {
        decisions.push_back(ref.id);
      }
    } else {
      ref.expr->id = ref.id;
      ref.expr->slot = -1;
      paths[ref.id] = {ref.path, ref.expr->pos};
      if (ref.expr->kind == ExprKind::kTernary) decisions.push_back(ref.id);
    }
    ++count;
  });
  out.num_nodes = count;
  out.decision_ids = std::move(decisions);

  std::set<int> widened;
  for (int round = 0; round < 16; ++round) {
    try {
      Checker checker(out.def, widened);
      checker.Run();
      CheckVoidUses(out.def);
      bool grew = false;
      for (int slot : checker.widen_requests()) grew |= widened.insert(slot).second;
      if (!grew) {
        out.slot_types = checker.slot_types();
        out.declared_slot_types = checker.declared();
        return out;
      }
    } catch (CheckFailure& failure) {
      TypeErrorReport r = std::move(failure.report);
      if (auto it = paths.find(r.node_id); it != paths.end()) {
        r.path = it->second.first;
        r.pos = it->second.second;
      } else {
        r.path = "signature";
        r.pos = fn.pos;
      }
      return MakeUnexpected(std::move(r));
    }
  }
  TypeErrorReport r;
  r.message = "variable widening did not converge";
  return MakeUnexpected(std::move(r));
}

}  // namespace xlt
