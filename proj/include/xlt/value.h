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

#ifndef XLT_VALUE_H_
#define XLT_VALUE_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "xlt/dialect.h"
#include "xlt/expected.h"

namespace xlt {

using BigInt = boost::multiprecision::cpp_int;

// Runtime value. I32 and I64 are stored widened in an int64_t and always kept
// normalized to their width. Arr/Lst share their element storage on copy, which
// is what gives parameters reference semantics inside the interpreter; use
// DeepCopy() to detach.
class Value {
 public:
  using Seq = std::vector<Value>;

  Value() = default;

  static Value Void() { return Value(); }
  static Value I32(std::int32_t v);
  static Value I64(std::int64_t v);
  static Value Big(BigInt v);
  static Value F64(double v);
  static Value Bool(bool v);
  static Value Str(std::string v);
  static Value Arr(TypeKind elem, Seq items);
  static Value Lst(TypeKind elem, Seq items);
  // Integer of the given integer kind, wrapping into fixed widths.
  static Value IntOf(TypeKind kind, const BigInt& v);

  TypeKind tag() const { return tag_; }
  TypeKind elem() const { return elem_; }
  Type type() const { return Type{tag_, elem_}; }

  bool IsInt() const { return IsIntKind(tag_); }
  bool IsNumeric() const { return IsNumericKind(tag_); }
  bool IsSeq() const { return IsSeqKind(tag_); }

  std::int64_t AsFixed() const { return std::get<std::int64_t>(data_); }
  const BigInt& AsBig() const { return std::get<BigInt>(data_); }
  double AsF64() const { return std::get<double>(data_); }
  bool AsBool() const { return std::get<bool>(data_); }
  const std::string& AsStr() const { return std::get<std::string>(data_); }
  const Seq& items() const { return *std::get<std::shared_ptr<Seq>>(data_); }
  Seq& mutable_items() { return *std::get<std::shared_ptr<Seq>>(data_); }

  // Numeric value of any integer tag.
  BigInt ToBigInt() const;
  // Numeric value of any numeric tag.
  double ToDouble() const;

  Value DeepCopy() const;

  // Canonical textual form shared by every dialect's print builtin.
  std::string Format() const;

 private:
  TypeKind tag_ = TypeKind::kVoid;
  TypeKind elem_ = TypeKind::kVoid;
  std::variant<std::monostate, std::int64_t, BigInt, double, bool, std::string,
               std::shared_ptr<Seq>>
      data_;
};

// Shortest round-trip decimal for a double; integral values keep a ".0".
std::string FormatDouble(double v);

std::int32_t WrapToI32(const BigInt& v);
std::int64_t WrapToI64(const BigInt& v);

struct IncomparableTags {
  TypeKind left;
  TypeKind right;
};

// Equality used by assertions: integers compare by numeric value across I32,
// I64 and BigInt; anything compared with an F64 uses |a - b| <= float_tol;
// sequences compare element-wise with the same rule.
Expected<bool, IncomparableTags> ValueEq(const Value& a, const Value& b, double float_tol);

// Convenience wrapper: incomparable values are unequal.
bool ValuesMatch(const Value& a, const Value& b, double float_tol);

// Exact structural identity (same tags, same bits). Used for determinism checks.
bool Identical(const Value& a, const Value& b);

}  // namespace xlt

#endif  // XLT_VALUE_H_
