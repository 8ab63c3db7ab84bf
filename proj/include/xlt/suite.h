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

#ifndef XLT_SUITE_H_
#define XLT_SUITE_H_

#include <optional>
#include <string>
#include <vector>

#include "xlt/exec.h"

namespace xlt {

struct TestCase {
  std::vector<Value> args;
  ExecOutcome expected;
  double float_tol = 0.01;
};

struct MutantVerdict {
  bool killed = false;
  int killing_case = -1;  // first case that kills, -1 when the mutant survives
};

struct MutationReport {
  int total_mutants = 0;
  int killed = 0;
  double score = 0.0;
  std::vector<MutantVerdict> verdicts;
};

struct TestSuite {
  std::string id;
  std::string function_id;
  Dialect dialect = Dialect::kDJ;
  std::vector<TestCase> cases;
  MutationReport report;
  int assert_count = 0;
  std::optional<Dialect> ported_from;
};

// Observations asserted by one case: the return value of a non-void
// function, each mutable parameter, and the print buffer of a function that
// prints.
int CaseAssertCount(const FunctionDef& fn, const TestCase& test);
int SuiteAssertCount(const FunctionDef& fn, const std::vector<TestCase>& cases);

// Whether every case of the suite passes on fn.
bool PassesSuite(const TypedFunction& fn, const TestSuite& suite, const ExecLimits& limits);

}  // namespace xlt

#endif  // XLT_SUITE_H_
