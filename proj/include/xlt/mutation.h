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

#ifndef XLT_MUTATION_H_
#define XLT_MUTATION_H_

#include <string>
#include <vector>

#include "xlt/suite.h"
#include "xlt/typecheck.h"

namespace xlt {

enum class MutationOperator : std::uint8_t {
  kReplaceArith,
  kReplaceRelational,
  kReplaceConstant,
  kInsertUnary,
  kReplaceVariable,
  kDeleteCall,
  kSwapTernaryBranches,
};

std::string_view MutationOperatorName(MutationOperator op);

struct Mutant {
  int index = 0;
  MutationOperator op = MutationOperator::kReplaceArith;
  int node_id = -1;
  std::string site;         // AST path of the mutated node
  std::string description;  // e.g. "< -> >"
  TypedFunction mutated;
};

// Every operator at every applicable site, ill-typed results dropped,
// duplicates (by printed text) removed, ordered by site then operator.
std::vector<Mutant> GenerateMutants(const TypedFunction& fn);

bool Kills(const TestCase& test, const Mutant& mutant, const ExecLimits& limits);

struct NoMutants {};

// A mutant is killed when at least one case kills it. Mutants are evaluated on
// up to `jobs` threads; the report does not depend on `jobs`.
Expected<MutationReport, NoMutants> MutationScore(const std::vector<TestCase>& cases,
                                                  const std::vector<Mutant>& mutants,
                                                  const ExecLimits& limits, int jobs = 1);
Expected<MutationReport, NoMutants> MutationScore(const TestSuite& suite, const TypedFunction& fn,
                                                  const ExecLimits& limits, int jobs = 1);

}  // namespace xlt

#endif  // XLT_MUTATION_H_
