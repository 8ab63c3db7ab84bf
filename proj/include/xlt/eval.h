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

#ifndef XLT_EVAL_H_
#define XLT_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xlt/exec.h"
#include "xlt/records.h"
#include "xlt/suite.h"
#include "xlt/translate.h"
#include "xlt/typecheck.h"

namespace xlt {

struct BenchmarkEntry {
  std::string id;
  std::string split;  // "validation" or "test"
  bool overflow_divergent = false;
  std::map<Dialect, TypedFunction> fns;
  std::map<Dialect, TestSuite> eval_suites;
};

struct Benchmark {
  std::vector<BenchmarkEntry> entries;
};

Json EntryToJson(const BenchmarkEntry& e);
Expected<BenchmarkEntry, std::string> EntryFromJson(const Json& j);
Expected<Benchmark, std::string> LoadBenchmark(const std::string& path);

using EntryFilter = std::function<bool(const BenchmarkEntry&)>;

bool OverflowFree(const BenchmarkEntry& e);
// Overflow-free entries of one split.
EntryFilter SplitFilter(const std::string& split);

struct EvalOptions {
  int n = 1;
  int k = 10;
  double alpha = 0.5;
  ExecLimits limits;
  int jobs = 1;
  // When set, candidates with equal scores are shuffled with this seed
  // instead of being ordered by their text.
  std::optional<std::uint64_t> tie_seed;
  EntryFilter filter;  // all entries when empty
};

struct EntryVerdict {
  std::string entry_id;
  bool passed = false;
  int pass_rank = -1;  // first passing rank among the top n, -1 if none
  bool unsupported = false;
};

struct CAReport {
  Dialect src = Dialect::kDJ;
  Dialect tgt = Dialect::kDP;
  int n = 1;
  int k = 10;
  int entries = 0;
  int passed = 0;
  double ratio = 0.0;
  int missing_suites = 0;  // beam reordering only: entries skipped
  std::vector<EntryVerdict> verdicts;
};

Json CAReportToJson(const CAReport& r);
// "DJ-DP CA@1=0.950 (57/60, k=10)"
std::string CAReportSummary(const CAReport& r);

CAReport CaAtN(const AmbiguityModel& model, const Benchmark& bench, Dialect src, Dialect tgt,
               const EvalOptions& opts);

// CA@1 averaged over the six directed language pairs.
double MeanCa1(const AmbiguityModel& model, const Benchmark& bench, const EvalOptions& opts);

// Moves candidates that pass the entry's pipeline suite (keyed by entry id,
// in the source dialect) to the front, keeping their relative order, then
// measures CA@1. Entries without a pipeline suite are skipped and counted.
CAReport BeamReorderEval(const AmbiguityModel& model, const Benchmark& bench, Dialect src,
                         Dialect tgt, const std::map<std::string, TestSuite>& pipeline_suites,
                         const EvalOptions& opts);

}  // namespace xlt

#endif  // XLT_EVAL_H_
