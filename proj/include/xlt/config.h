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

#ifndef XLT_CONFIG_H_
#define XLT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "xlt/exec.h"
#include "xlt/pipeline.h"
#include "xlt/records.h"
#include "xlt/testgen.h"

namespace xlt {

struct Seeds {
  std::uint64_t testgen = 1;
  std::uint64_t cache = 1;
  std::optional<std::uint64_t> eval;  // tie shuffling in CA@N, off by default
};

struct Paths {
  std::string corpus_dir = "xlt-out";
  std::string model_file = "xlt-out/model.jsonl";
  std::string benchmark_dir;  // defaults to the bundled benchmark
};

struct RunConfig {
  Seeds seeds;
  GenConfig gen;
  CacheConfig cache;
  int k = 20;
  double alpha = 0.5;
  double min_score = 0.9;
  int min_asserts = 2;
  ExecLimits limits;
  Paths paths;
  int jobs = 1;
};

Json ConfigToJson(const RunConfig& cfg);
// Missing keys keep their defaults; unknown keys are errors.
Expected<RunConfig, std::string> ConfigFromJson(const Json& j);

// XLT_CORPUS_DIR, XLT_MODEL_FILE and XLT_BENCHMARK_DIR override the paths.
void ApplyEnvOverrides(RunConfig& cfg);

std::string DefaultBenchmarkDir();

}  // namespace xlt

#endif  // XLT_CONFIG_H_
