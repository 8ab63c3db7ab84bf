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

#include "xlt/dialect.h"

#include <algorithm>
#include <map>

namespace xlt {

std::string_view DialectName(Dialect dialect) {
  switch (dialect) {
    case Dialect::kDJ:
      return "DJ";
    case Dialect::kDP:
      return "DP";
    case Dialect::kDC:
      return "DC";
  }
  return "?";
}

std::optional<Dialect> DialectFromName(std::string_view name) {
  for (Dialect d : kDialects) {
    if (DialectName(d) == name) return d;
  }
  return std::nullopt;
}

std::string_view TypeKindName(TypeKind kind) {
  switch (kind) {
    case TypeKind::kVoid:
      return "void";
    case TypeKind::kI32:
      return "i32";
    case TypeKind::kI64:
      return "i64";
    case TypeKind::kBigInt:
      return "bigint";
    case TypeKind::kF64:
      return "f64";
    case TypeKind::kBool:
      return "bool";
    case TypeKind::kStr:
      return "str";
    case TypeKind::kArr:
      return "arr";
    case TypeKind::kLst:
      return "lst";
  }
  return "?";
}

std::optional<TypeKind> TypeKindFromName(std::string_view name) {
  for (TypeKind k : {TypeKind::kVoid, TypeKind::kI32, TypeKind::kI64, TypeKind::kBigInt,
                     TypeKind::kF64, TypeKind::kBool, TypeKind::kStr, TypeKind::kArr,
                     TypeKind::kLst}) {
    if (TypeKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string TypeDebugName(const Type& type) {
  if (type.IsSeq()) {
    return std::string(TypeKindName(type.kind)) + "<" + std::string(TypeKindName(type.elem)) +
           ">";
  }
  return std::string(TypeKindName(type.kind));
}

std::string_view BinaryOpName(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "add";
    case BinaryOp::kSub: return "sub";
    case BinaryOp::kMul: return "mul";
    case BinaryOp::kDiv: return "div";
    case BinaryOp::kFloorDiv: return "floordiv";
    case BinaryOp::kMod: return "mod";
    case BinaryOp::kPow: return "pow";
    case BinaryOp::kShl: return "shl";
    case BinaryOp::kShr: return "shr";
    case BinaryOp::kBitAnd: return "bitand";
    case BinaryOp::kBitOr: return "bitor";
    case BinaryOp::kBitXor: return "bitxor";
    case BinaryOp::kEq: return "eq";
    case BinaryOp::kNe: return "ne";
    case BinaryOp::kLt: return "lt";
    case BinaryOp::kLe: return "le";
    case BinaryOp::kGt: return "gt";
    case BinaryOp::kGe: return "ge";
    case BinaryOp::kAnd: return "and";
    case BinaryOp::kOr: return "or";
  }
  return "?";
}

std::string_view UnaryOpName(UnaryOp op) {
  switch (op) {
    case UnaryOp::kNeg: return "neg";
    case UnaryOp::kNot: return "not";
    case UnaryOp::kBitNot: return "bitnot";
  }
  return "?";
}

bool IsArithmetic(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
    case BinaryOp::kSub:
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kFloorDiv:
    case BinaryOp::kMod:
    case BinaryOp::kPow:
      return true;
    default:
      return false;
  }
}

bool IsBitwise(BinaryOp op) {
  return op == BinaryOp::kBitAnd || op == BinaryOp::kBitOr || op == BinaryOp::kBitXor;
}

bool IsShift(BinaryOp op) { return op == BinaryOp::kShl || op == BinaryOp::kShr; }

bool IsComparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::kEq:
    case BinaryOp::kNe:
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe:
      return true;
    default:
      return false;
  }
}

bool IsLogical(BinaryOp op) { return op == BinaryOp::kAnd || op == BinaryOp::kOr; }

BinaryOp NegateComparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::kEq: return BinaryOp::kNe;
    case BinaryOp::kNe: return BinaryOp::kEq;
    case BinaryOp::kLt: return BinaryOp::kGe;
    case BinaryOp::kGe: return BinaryOp::kLt;
    case BinaryOp::kGt: return BinaryOp::kLe;
    case BinaryOp::kLe: return BinaryOp::kGt;
    default: return op;
  }
}

namespace {

// C-family levels (DJ, DC).
int CFamilyLevel(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return 2;
    case BinaryOp::kAnd: return 3;
    case BinaryOp::kBitOr: return 4;
    case BinaryOp::kBitXor: return 5;
    case BinaryOp::kBitAnd: return 6;
    case BinaryOp::kEq:
    case BinaryOp::kNe: return 7;
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: return 8;
    case BinaryOp::kShl:
    case BinaryOp::kShr: return 9;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 10;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kMod: return 11;
    case BinaryOp::kFloorDiv:
    case BinaryOp::kPow: return 0;
  }
  return 0;
}

// Python-family levels (DP). Level 4 is the `not` prefix, 12 the arithmetic
// prefixes.
int PyLevel(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return 2;
    case BinaryOp::kAnd: return 3;
    case BinaryOp::kEq:
    case BinaryOp::kNe:
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: return 5;
    case BinaryOp::kBitOr: return 6;
    case BinaryOp::kBitXor: return 7;
    case BinaryOp::kBitAnd: return 8;
    case BinaryOp::kShl:
    case BinaryOp::kShr: return 9;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 10;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kFloorDiv:
    case BinaryOp::kMod: return 11;
    case BinaryOp::kPow: return 13;
  }
  return 0;
}

}  // namespace

int SemanticsProfile::BinaryLevel(BinaryOp op) const {
  return dialect == Dialect::kDP ? PyLevel(op) : CFamilyLevel(op);
}

Assoc SemanticsProfile::BinaryAssoc(BinaryOp op) const {
  if (dialect == Dialect::kDP) {
    if (op == BinaryOp::kPow) return Assoc::kRight;
    // Python chains comparisons; the dialect rejects chains instead.
    if (IsComparison(op)) return Assoc::kNone;
  }
  return Assoc::kLeft;
}

int SemanticsProfile::UnaryLevel(UnaryOp op) const {
  if (dialect == Dialect::kDP && op == UnaryOp::kNot) return 4;
  return 12;
}

int SemanticsProfile::CastLevel() const {
  return dialect == Dialect::kDP ? kPrimaryLevel : 12;
}

std::string_view SemanticsProfile::BinaryToken(BinaryOp op) const {
  const bool py = dialect == Dialect::kDP;
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kFloorDiv: return "//";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kPow: return "**";
    case BinaryOp::kShl: return "<<";
    case BinaryOp::kShr: return ">>";
    case BinaryOp::kBitAnd: return "&";
    case BinaryOp::kBitOr: return "|";
    case BinaryOp::kBitXor: return "^";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return py ? "and" : "&&";
    case BinaryOp::kOr: return py ? "or" : "||";
  }
  return "?";
}

std::string_view SemanticsProfile::UnaryToken(UnaryOp op) const {
  switch (op) {
    case UnaryOp::kNeg: return "-";
    case UnaryOp::kBitNot: return "~";
    case UnaryOp::kNot: return dialect == Dialect::kDP ? "not" : "!";
  }
  return "?";
}

std::optional<BinaryOp> SemanticsProfile::BinaryFromToken(std::string_view token) const {
  for (BinaryOp op : kBinaryOps) {
    if (Supports(op) && BinaryToken(op) == token) return op;
  }
  return std::nullopt;
}

std::vector<std::vector<BinaryOp>> SemanticsProfile::PrecedenceTable() const {
  std::map<int, std::vector<BinaryOp>> by_level;
  for (BinaryOp op : kBinaryOps) {
    if (int level = BinaryLevel(op); level > 0) by_level[level].push_back(op);
  }
  std::vector<std::vector<BinaryOp>> table;
  for (auto& [level, ops] : by_level) table.push_back(std::move(ops));
  return table;
}

const SemanticsProfile& ProfileOf(Dialect dialect) {
  static const SemanticsProfile kJava{
      .dialect = Dialect::kDJ,
      .default_int = TypeKind::kI32,
      .true_division = false,
      .floored_remainder = false,
      .has_floor_div = false,
      .has_pow = false,
      .has_bigint = false,
      .has_arrays = true,
      .float_div_by_zero_faults = false,
  };
  static const SemanticsProfile kPython{
      .dialect = Dialect::kDP,
      .default_int = TypeKind::kBigInt,
      .true_division = true,
      .floored_remainder = true,
      .has_floor_div = true,
      .has_pow = true,
      .has_bigint = true,
      .has_arrays = false,
      .float_div_by_zero_faults = true,
  };
  static const SemanticsProfile kCpp{
      .dialect = Dialect::kDC,
      .default_int = TypeKind::kI32,
      .true_division = false,
      .floored_remainder = false,
      .has_floor_div = false,
      .has_pow = false,
      .has_bigint = false,
      .has_arrays = true,
      .float_div_by_zero_faults = false,
  };
  switch (dialect) {
    case Dialect::kDJ:
      return kJava;
    case Dialect::kDP:
      return kPython;
    case Dialect::kDC:
      return kCpp;
  }
  return kJava;
}

}  // namespace xlt
