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

#ifndef XLT_TYPECHECK_H_
#define XLT_TYPECHECK_H_

#include <string>
#include <vector>

#include "xlt/ast.h"
#include "xlt/expected.h"

namespace xlt {

// A FunctionDef whose every expression carries a type tag, whose variables are
// resolved to slots and whose nodes carry their preorder ids. Only Typecheck
// produces one.
struct TypedFunction {
  FunctionDef def;
  // Static type of each slot. Parameters occupy the first slots. In DP a slot
  // declared with an integer type widens to F64 when assigned a float.
  std::vector<Type> slot_types;
  std::vector<Type> declared_slot_types;
  int num_nodes = 0;
  // Ids of if/while/ternary nodes, in preorder.
  std::vector<int> decision_ids;

  const std::string& name() const { return def.name; }
  Dialect dialect() const { return def.dialect; }
};

struct TypeErrorReport {
  int node_id = -1;
  std::string path;
  SourcePos pos;
  std::string expected;
  std::string found;
  std::string message;

  std::string ToString() const;
};

Expected<TypedFunction, TypeErrorReport> Typecheck(const FunctionDef& fn);

// Integer promotion shared by the checker and the interpreter: fixed widths win
// over BigInt and the wider fixed width wins.
TypeKind PromoteInt(TypeKind a, TypeKind b);

// Whether the dialect can name the type at all (DJ/DC have no BigInt, DP has
// no fixed-length arrays).
bool DialectHasType(Dialect dialect, const Type& type);

}  // namespace xlt

#endif  // XLT_TYPECHECK_H_
