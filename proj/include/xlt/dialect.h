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

#ifndef XLT_DIALECT_H_
#define XLT_DIALECT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xlt {

// DJ follows Java semantics, DP follows Python semantics and DC follows C++.
enum class Dialect : std::uint8_t { kDJ, kDP, kDC };

inline constexpr std::array<Dialect, 3> kDialects = {Dialect::kDJ, Dialect::kDP,
                                                     Dialect::kDC};

std::string_view DialectName(Dialect dialect);
std::optional<Dialect> DialectFromName(std::string_view name);

enum class TypeKind : std::uint8_t {
  kVoid,
  kI32,
  kI64,
  kBigInt,
  kF64,
  kBool,
  kStr,
  kArr,
  kLst,
};

std::string_view TypeKindName(TypeKind kind);
std::optional<TypeKind> TypeKindFromName(std::string_view name);

inline bool IsIntKind(TypeKind k) {
  return k == TypeKind::kI32 || k == TypeKind::kI64 || k == TypeKind::kBigInt;
}
inline bool IsNumericKind(TypeKind k) { return IsIntKind(k) || k == TypeKind::kF64; }
inline bool IsSeqKind(TypeKind k) { return k == TypeKind::kArr || k == TypeKind::kLst; }

// A static type: a scalar kind, or a sequence kind with a scalar element kind.
struct Type {
  TypeKind kind = TypeKind::kVoid;
  TypeKind elem = TypeKind::kVoid;

  static constexpr Type Of(TypeKind k) { return Type{k, TypeKind::kVoid}; }
  static constexpr Type ArrOf(TypeKind e) { return Type{TypeKind::kArr, e}; }
  static constexpr Type LstOf(TypeKind e) { return Type{TypeKind::kLst, e}; }

  bool IsInt() const { return IsIntKind(kind); }
  bool IsNumeric() const { return IsNumericKind(kind); }
  bool IsSeq() const { return IsSeqKind(kind); }

  friend bool operator==(const Type&, const Type&) = default;
};

std::string TypeDebugName(const Type& type);

enum class BinaryOp : std::uint8_t {
  kAdd,
  kSub,
  kMul,
  kDiv,       // the `/` token; meaning depends on the dialect
  kFloorDiv,  // DP `//`
  kMod,
  kPow,  // DP `**`
  kShl,
  kShr,
  kBitAnd,
  kBitOr,
  kBitXor,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kAnd,
  kOr,
};

inline constexpr std::array<BinaryOp, 20> kBinaryOps = {
    BinaryOp::kAdd,    BinaryOp::kSub,   BinaryOp::kMul,    BinaryOp::kDiv,
    BinaryOp::kFloorDiv, BinaryOp::kMod, BinaryOp::kPow,    BinaryOp::kShl,
    BinaryOp::kShr,    BinaryOp::kBitAnd, BinaryOp::kBitOr, BinaryOp::kBitXor,
    BinaryOp::kEq,     BinaryOp::kNe,    BinaryOp::kLt,     BinaryOp::kLe,
    BinaryOp::kGt,     BinaryOp::kGe,    BinaryOp::kAnd,    BinaryOp::kOr,
};

enum class UnaryOp : std::uint8_t { kNeg, kNot, kBitNot };

std::string_view BinaryOpName(BinaryOp op);
std::string_view UnaryOpName(UnaryOp op);

bool IsArithmetic(BinaryOp op);  // + - * / // % **
bool IsBitwise(BinaryOp op);     // & | ^
bool IsShift(BinaryOp op);
bool IsComparison(BinaryOp op);
bool IsLogical(BinaryOp op);
BinaryOp NegateComparison(BinaryOp op);  // < -> >=, == -> != ...

enum class Assoc : std::uint8_t { kLeft, kRight, kNone };

// Precedence levels: larger binds tighter. Level 1 is the conditional
// expression; kPrimaryLevel is literals, names, calls and indexing.
inline constexpr int kTernaryLevel = 1;
inline constexpr int kPrimaryLevel = 100;

// The per-dialect semantics that the interpreter, parser and printer consult.
struct SemanticsProfile {
  Dialect dialect;
  TypeKind default_int;     // type of integer literals and of `len`
  bool true_division;       // `/` on two integers yields F64
  bool floored_remainder;   // `%` rounds toward negative infinity
  bool has_floor_div;       // `//` exists
  bool has_pow;             // `**` exists
  bool has_bigint;
  bool has_arrays;          // fixed-length Arr type exists
  bool float_div_by_zero_faults;

  // 0 when the operator does not exist in this dialect.
  int BinaryLevel(BinaryOp op) const;
  Assoc BinaryAssoc(BinaryOp op) const;
  int UnaryLevel(UnaryOp op) const;
  // Prefix casts such as `( double ) x` sit at the unary level; call-style
  // casts (DP `float ( x )`) are primaries.
  int CastLevel() const;
  std::string_view BinaryToken(BinaryOp op) const;
  std::string_view UnaryToken(UnaryOp op) const;
  std::optional<BinaryOp> BinaryFromToken(std::string_view token) const;
  bool Supports(BinaryOp op) const { return BinaryLevel(op) > 0; }

  // Binary operator levels from loosest to tightest; each inner vector is one
  // level. Every supported operator appears exactly once.
  std::vector<std::vector<BinaryOp>> PrecedenceTable() const;
};

const SemanticsProfile& ProfileOf(Dialect dialect);

}  // namespace xlt

#endif  // XLT_DIALECT_H_
