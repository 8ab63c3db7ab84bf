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

#include "xlt/suite.h"

#include <algorithm>

namespace xlt {
namespace {

bool Prints(const std::vector<Stmt>& block);

bool ExprPrints(const Expr& e) {
  if (e.kind == ExprKind::kCall && e.builtin == Builtin::kPrint) return true;
  for (const Expr& k : e.kids) {
    if (ExprPrints(k)) return true;
  }
  return false;
}

bool Prints(const std::vector<Stmt>& block) {
  for (const Stmt& s : block) {
    for (const Expr& e : s.exprs) {
      if (ExprPrints(e)) return true;
    }
    if (Prints(s.body) || Prints(s.orelse)) return true;
  }
  return false;
}

}  // namespace

int CaseAssertCount(const FunctionDef& fn, const TestCase& test) {
  int n = static_cast<int>(test.expected.param_state.size());
  if (fn.ret.kind != TypeKind::kVoid) ++n;
  if (Prints(fn.body)) ++n;
  // A case with nothing to observe still asserts that the call completes.
  return std::max(n, 1);
}

int SuiteAssertCount(const FunctionDef& fn, const std::vector<TestCase>& cases) {
  int n = 0;
  for (const TestCase& c : cases) n += CaseAssertCount(fn, c);
  return n;
}

bool PassesSuite(const TypedFunction& fn, const TestSuite& suite, const ExecLimits& limits) {
  for (const TestCase& c : suite.cases) {
    if (c.args.size() != fn.def.params.size()) return false;
    try {
      ExecOutcome got = Execute(fn, c.args, limits);
      if (!OutcomesMatch(c.expected, got, c.float_tol)) return false;
    } catch (const ArityMismatch&) {
      return false;
    }
  }
  return true;
}

}  // namespace xlt
