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

#ifndef XLT_PIPELINE_H_
#define XLT_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xlt/exec.h"
#include "xlt/suite.h"
#include "xlt/testgen.h"
#include "xlt/translate.h"
#include "xlt/typecheck.h"

namespace xlt {

// A function of the monolingual corpus with its selected suite, if any.
struct CorpusFunction {
  std::string id;
  TypedFunction fn;
  std::optional<TestSuite> suite;
};

// Parses and typechecks every function of a corpus file, named by function
// name; no suites attached.
Expected<std::vector<CorpusFunction>, std::string> LoadCorpusFunctions(const std::string& text,
                                                                       Dialect dialect);

// Generates a suite for each function and keeps the ones that pass selection.
void AttachSelectedSuites(std::vector<CorpusFunction>& functions, const GenConfig& gen,
                          double min_score = 0.9, int min_asserts = 2);

struct ParallelPair {
  std::string src_id;
  Dialect src_dialect = Dialect::kDJ;
  std::string src_text;
  Dialect tgt_dialect = Dialect::kDP;
  std::string tgt_text;
  std::string suite_id;
  int beam_rank = 0;  // -1 for pairs between two accepted translations
  DirectedChoices forward;
  std::optional<DirectedChoices> reverse;
  int iteration = 0;
};

// "DJ-DP" style key of the unordered language pair.
std::string LanguagePairName(Dialect a, Dialect b);

struct PipelineConfig {
  int k = 20;
  double alpha = 0.5;
  ExecLimits limits;
  int jobs = 1;
};

struct NoPass {
  int candidates = 0;
};

// First candidate, in beam order, that parses, typechecks and passes every
// case of `ported`.
Expected<ParallelPair, NoPass> FilterBeam(const Beam& beam, const TestSuite& ported,
                                          const ExecLimits& limits);

// Whether the pair's target text still passes `suite` ported to its dialect.
bool RecheckPair(const ParallelPair& pair, const TestSuite& suite, const ExecLimits& limits);

// Pairs produced from one function: one per target dialect whose beam has a
// passing candidate, plus the pair between the two accepted translations.
std::vector<ParallelPair> PairsForFunction(const CorpusFunction& f, const AmbiguityModel& model,
                                           const PipelineConfig& cfg, int iteration);

struct IterationReport {
  int iteration = 0;
  std::map<std::string, int> pairs;  // by LanguagePairName
  int updates = 0;
  double validation_ca1 = 0.0;
  std::string model_id;
  bool accepted = true;  // became the generator of the next iteration
};

std::string ModelId(const AmbiguityModel& model);

struct Corpus {
  std::vector<ParallelPair> pairs;
  IterationReport report;
};

Corpus BuildCorpusOffline(const std::vector<CorpusFunction>& functions,
                          const AmbiguityModel& model, const PipelineConfig& cfg,
                          int iteration = 1);

// Forward and reverse choices of every pair, in pair order.
std::vector<DirectedChoices> TrainingBatch(const std::vector<ParallelPair>& pairs);
AmbiguityModel TrainOnPair(const AmbiguityModel& model, const ParallelPair& pair);

using Validator = std::function<double(const AmbiguityModel&)>;

struct OfflineResult {
  double baseline_ca1 = 0.0;
  std::vector<IterationReport> reports;
  std::vector<Corpus> corpora;
  std::vector<AmbiguityModel> models;  // the updated model of each iteration
  AmbiguityModel best;
};

OfflineResult TrainOffline(const std::vector<CorpusFunction>& functions,
                           const AmbiguityModel& model0, int iterations,
                           const PipelineConfig& cfg, const Validator& validate);

struct CacheConfig {
  int warmup_min = 500;
  double p_sample_cache = 0.5;
  double p_remove = 0.3;
  std::optional<std::size_t> capacity;  // unbounded by default, oldest evicted first
  std::uint64_t seed = 1;
};

struct CacheEntry {
  ParallelPair pair;
  int times_trained = 0;
  std::int64_t inserted_at = 0;
  std::int64_t serial = 0;
};

enum class CacheEventKind : std::uint8_t { kGenerate, kInsert, kSample, kRemove, kEvict };

std::string_view CacheEventName(CacheEventKind kind);

struct CacheEvent {
  std::int64_t step = 0;
  CacheEventKind kind = CacheEventKind::kGenerate;
  std::int64_t serial = -1;    // entry concerned, -1 for kGenerate
  std::size_t cache_size = 0;  // after the event
};

struct OnlineResult {
  AmbiguityModel model;
  std::int64_t steps = 0;
  std::int64_t updates = 0;
  std::int64_t inserted = 0;
  std::int64_t removed = 0;
  std::vector<CacheEvent> events;
  // times_trained -> number of entries, for entries that left the cache
  // (removed or evicted) and for entries still in it at the end.
  std::map<int, std::int64_t> retired_histogram;
  std::map<int, std::int64_t> live_histogram;
  std::map<std::string, int> pairs;  // generated pairs by LanguagePairName
};

// Produces new pairs with the current model; called once per generation step.
using PairSource = std::function<std::vector<ParallelPair>(const AmbiguityModel&, std::int64_t)>;

// Generates from the corpus functions in a seeded order, cycling through them.
PairSource CorpusPairSource(const std::vector<CorpusFunction>& functions,
                            const PipelineConfig& cfg, std::uint64_t seed);

struct OnlineConfig {
  std::int64_t steps = 1;
  // Stops once this many learn updates happened, if set.
  std::optional<std::int64_t> max_updates;
  std::vector<ParallelPair> initial_cache;
  // After the last step, keeps training on cached entries (no generation)
  // until the cache is empty, so every entry's lifetime is observed.
  bool drain = false;
};

OnlineResult TrainOnline(const AmbiguityModel& model0, const CacheConfig& cache,
                         const OnlineConfig& cfg, const PairSource& generate);

}  // namespace xlt

#endif  // XLT_PIPELINE_H_
