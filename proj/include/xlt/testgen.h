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

#ifndef XLT_TESTGEN_H_
#define XLT_TESTGEN_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "xlt/mutation.h"
#include "xlt/suite.h"

namespace xlt {

struct GenConfig {
  std::int64_t int_bound = 46340;  // floor(sqrt(2^31 - 1))
  int max_evaluations = 2000;
  int population_size = 32;
  std::uint64_t seed = 1;
  double branch_weight = 1.0;
  double kill_weight = 1.0;
  double float_tol = 0.01;
  int max_seq_len = 6;
  // Generations without a newly covered goal before the search stops early.
  int stagnation_generations = 4;
  ExecLimits limits;
  int jobs = 1;
};

struct Rejected {
  ExecStatus status;
};

Expected<TestCase, Rejected> SynthesizeTest(const TypedFunction& fn, const std::vector<Value>& args,
                                            const ExecLimits& limits = {},
                                            double float_tol = 0.01);

struct NoViableInputs {
  int attempts = 0;
};

// Seeded evolutionary search over argument tuples. `function_id` names the
// suite and feeds the per-function random stream, so results do not depend on
// the order functions are processed in.
Expected<TestSuite, NoViableInputs> EvolveSuite(const TypedFunction& fn,
                                                const std::string& function_id,
                                                const GenConfig& cfg);

// Same search with a precomputed mutant list.
Expected<TestSuite, NoViableInputs> EvolveSuite(const TypedFunction& fn,
                                                const std::string& function_id,
                                                const std::vector<Mutant>& mutants,
                                                const GenConfig& cfg);

// Random argument tuple within the bounds of cfg; exposed for fuzzing.
std::vector<Value> RandomArgs(const FunctionDef& fn, const GenConfig& cfg, std::mt19937_64& rng);

bool SelectSuite(const TestSuite& suite, double min_score = 0.9, int min_asserts = 2);

// Stable 64-bit FNV-1a hash used to derive per-item random streams.
std::uint64_t StableHash(std::string_view text);

}  // namespace xlt

#endif  // XLT_TESTGEN_H_
