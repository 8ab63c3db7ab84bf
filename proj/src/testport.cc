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

#include "xlt/testport.h"

#include <limits>

namespace xlt {
namespace {

TypeKind FixedKindFor(const BigInt& v) {
  if (v >= std::numeric_limits<std::int32_t>::min() && v <= std::numeric_limits<std::int32_t>::max()) {
    return TypeKind::kI32;
  }
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return TypeKind::kI64;
  }
  return TypeKind::kBigInt;
}

}  // namespace

Expected<Value, Unsupported> PortValue(const Value& v, Dialect from, Dialect to) {
  if (from == to) return v.DeepCopy();
  const bool to_py = to == Dialect::kDP;
  if (v.IsSeq()) {
    Value::Seq items;
    TypeKind elem = v.elem();
    if (IsIntKind(elem)) {
      if (to_py) {
        elem = TypeKind::kBigInt;
      } else if (from == Dialect::kDP) {
        // One element tag for the whole sequence: the widest any element needs.
        elem = TypeKind::kI32;
        for (const Value& item : v.items()) {
          TypeKind k = FixedKindFor(item.ToBigInt());
          if (k == TypeKind::kBigInt) return MakeUnexpected(Unsupported{"bigint " + item.Format()});
          if (k == TypeKind::kI64) elem = TypeKind::kI64;
        }
      }
    }
    for (const Value& item : v.items()) {
      if (IsIntKind(elem)) {
        items.push_back(Value::IntOf(elem, item.ToBigInt()));
      } else {
        items.push_back(item);
      }
    }
    TypeKind kind = (to_py || v.tag() == TypeKind::kLst) ? TypeKind::kLst : TypeKind::kArr;
    return kind == TypeKind::kArr ? Value::Arr(elem, std::move(items))
                                  : Value::Lst(elem, std::move(items));
  }
  if (v.IsInt()) {
    if (to_py) return Value::Big(v.ToBigInt());
    if (from == Dialect::kDP) {
      TypeKind k = FixedKindFor(v.ToBigInt());
      if (k == TypeKind::kBigInt) return MakeUnexpected(Unsupported{"bigint " + v.Format()});
      return Value::IntOf(k, v.ToBigInt());
    }
    return v;
  }
  return v;
}

Expected<TestSuite, Unsupported> PortSuite(const TestSuite& suite, Dialect target) {
  if (suite.dialect == target) return suite;
  TestSuite out = suite;
  out.dialect = target;
  out.ported_from = suite.dialect;
  for (TestCase& c : out.cases) {
    for (Value& a : c.args) {
      auto p = PortValue(a, suite.dialect, target);
      if (!p) return MakeUnexpected(p.error());
      a = std::move(*p);
    }
    if (c.expected.return_value) {
      auto p = PortValue(*c.expected.return_value, suite.dialect, target);
      if (!p) return MakeUnexpected(p.error());
      c.expected.return_value = std::move(*p);
    }
    for (auto& [index, value] : c.expected.param_state) {
      auto p = PortValue(value, suite.dialect, target);
      if (!p) return MakeUnexpected(p.error());
      value = std::move(*p);
    }
  }
  return out;
}

}  // namespace xlt
