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

#include "xlt/value.h"

#include <charconv>
#include <cmath>
#include <cstring>

namespace xlt {

Value Value::I32(std::int32_t v) {
  Value out;
  out.tag_ = TypeKind::kI32;
  out.data_ = static_cast<std::int64_t>(v);
  return out;
}

Value Value::I64(std::int64_t v) {
  Value out;
  out.tag_ = TypeKind::kI64;
  out.data_ = v;
  return out;
}

Value Value::Big(BigInt v) {
  Value out;
  out.tag_ = TypeKind::kBigInt;
  out.data_ = std::move(v);
  return out;
}

Value Value::F64(double v) {
  Value out;
  out.tag_ = TypeKind::kF64;
  out.data_ = v;
  return out;
}

Value Value::Bool(bool v) {
  Value out;
  out.tag_ = TypeKind::kBool;
  out.data_ = v;
  return out;
}

Value Value::Str(std::string v) {
  Value out;
  out.tag_ = TypeKind::kStr;
  out.data_ = std::move(v);
  return out;
}

Value Value::Arr(TypeKind elem, Seq items) {
  Value out;
  out.tag_ = TypeKind::kArr;
  out.elem_ = elem;
  out.data_ = std::make_shared<Seq>(std::move(items));
  return out;
}

Value Value::Lst(TypeKind elem, Seq items) {
  Value out = Arr(elem, std::move(items));
  out.tag_ = TypeKind::kLst;
  return out;
}

std::int32_t WrapToI32(const BigInt& v) {
  BigInt m = v & BigInt(0xFFFFFFFFu);
  auto low = static_cast<std::uint32_t>(m);
  return static_cast<std::int32_t>(low);
}

std::int64_t WrapToI64(const BigInt& v) {
  BigInt m = v & BigInt(0xFFFFFFFFFFFFFFFFull);
  auto low = static_cast<std::uint64_t>(m);
  return static_cast<std::int64_t>(low);
}

Value Value::IntOf(TypeKind kind, const BigInt& v) {
  switch (kind) {
    case TypeKind::kI32:
      return I32(WrapToI32(v));
    case TypeKind::kI64:
      return I64(WrapToI64(v));
    default:
      return Big(v);
  }
}

BigInt Value::ToBigInt() const {
  if (tag_ == TypeKind::kBigInt) return AsBig();
  return BigInt(AsFixed());
}

double Value::ToDouble() const {
  switch (tag_) {
    case TypeKind::kF64:
      return AsF64();
    case TypeKind::kBigInt:
      return AsBig().convert_to<double>();
    default:
      return static_cast<double>(AsFixed());
  }
}

Value Value::DeepCopy() const {
  if (!IsSeq()) return *this;
  Seq copy;
  copy.reserve(items().size());
  for (const Value& v : items()) copy.push_back(v.DeepCopy());
  Value out = *this;
  out.data_ = std::make_shared<Seq>(std::move(copy));
  return out;
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string Value::Format() const {
  switch (tag_) {
    case TypeKind::kVoid:
      return "void";
    case TypeKind::kI32:
    case TypeKind::kI64:
      return std::to_string(AsFixed());
    case TypeKind::kBigInt:
      return AsBig().str();
    case TypeKind::kF64:
      return FormatDouble(AsF64());
    case TypeKind::kBool:
      return AsBool() ? "true" : "false";
    case TypeKind::kStr:
      return AsStr();
    case TypeKind::kArr:
    case TypeKind::kLst: {
      std::string out = "[";
      bool first = true;
      for (const Value& v : items()) {
        if (!first) out += ", ";
        first = false;
        out += v.Format();
      }
      return out + "]";
    }
  }
  return "?";
}

Expected<bool, IncomparableTags> ValueEq(const Value& a, const Value& b, double float_tol) {
  if (a.IsNumeric() && b.IsNumeric()) {
    if (a.IsInt() && b.IsInt()) {
      if (a.tag() != TypeKind::kBigInt && b.tag() != TypeKind::kBigInt) {
        return a.AsFixed() == b.AsFixed();
      }
      return a.ToBigInt() == b.ToBigInt();
    }
    double x = a.ToDouble();
    double y = b.ToDouble();
    if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::fabs(x - y) <= float_tol;
  }
  if (a.IsSeq() && b.IsSeq()) {
    if (a.items().size() != b.items().size()) return false;
    for (std::size_t i = 0; i < a.items().size(); ++i) {
      auto eq = ValueEq(a.items()[i], b.items()[i], float_tol);
      if (!eq) return eq;
      if (!*eq) return false;
    }
    return true;
  }
  if (a.tag() != b.tag()) return MakeUnexpected(IncomparableTags{a.tag(), b.tag()});
  switch (a.tag()) {
    case TypeKind::kBool:
      return a.AsBool() == b.AsBool();
    case TypeKind::kStr:
      return a.AsStr() == b.AsStr();
    case TypeKind::kVoid:
      return true;
    default:
      return MakeUnexpected(IncomparableTags{a.tag(), b.tag()});
  }
}

bool ValuesMatch(const Value& a, const Value& b, double float_tol) {
  auto eq = ValueEq(a, b, float_tol);
  return eq.has_value() && *eq;
}

bool Identical(const Value& a, const Value& b) {
  if (a.tag() != b.tag() || a.elem() != b.elem()) return false;
  switch (a.tag()) {
    case TypeKind::kVoid:
      return true;
    case TypeKind::kI32:
    case TypeKind::kI64:
      return a.AsFixed() == b.AsFixed();
    case TypeKind::kBigInt:
      return a.AsBig() == b.AsBig();
    case TypeKind::kF64: {
      double x = a.AsF64();
      double y = b.AsF64();
      return std::memcmp(&x, &y, sizeof(double)) == 0;
    }
    case TypeKind::kBool:
      return a.AsBool() == b.AsBool();
    case TypeKind::kStr:
      return a.AsStr() == b.AsStr();
    case TypeKind::kArr:
    case TypeKind::kLst:
      if (a.items().size() != b.items().size()) return false;
      for (std::size_t i = 0; i < a.items().size(); ++i) {
        if (!Identical(a.items()[i], b.items()[i])) return false;
      }
      return true;
  }
  return false;
}

}  // namespace xlt
