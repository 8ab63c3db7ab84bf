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

#include <gtest/gtest.h>

#include <set>

#include "helpers.h"
#include "xlt/eval.h"
#include "xlt/pipeline.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"

namespace xlt {
namespace {

using testing::SmallCorpus;
using testing::Typed;

TestSuite SuiteFor(const TypedFunction& fn, const std::string& id) {
  auto s = EvolveSuite(fn, id, GenConfig{});
  EXPECT_TRUE(s.has_value());
  return s ? *s : TestSuite{};
}

TEST(FilterBeam, SkipsFailingTopCandidate) {
  auto pb = Typed(Dialect::kDJ, testing::kJavaPrintb);
  TestSuite suite = SuiteFor(pb, "printb");
  auto ported = PortSuite(suite, Dialect::kDP);
  ASSERT_TRUE(ported.has_value());
  // A model that prefers `/=`, which never reaches zero on floats.
  AmbiguityModel m = AmbiguityModel::WithNoise({{{SiteKind::kIntDivRendering, 0.9}}});
  auto beam = EnumerateCandidates(pb, "printb", Dialect::kDP, m, 20, 0.5);
  ASSERT_TRUE(beam.has_value());
  ASSERT_GE(beam->candidates.size(), 2u);
  auto pair = FilterBeam(*beam, *ported, ExecLimits{});
  ASSERT_TRUE(pair.has_value());
  EXPECT_NE(beam->candidates[0].rendering.text.find("x /= 2"), std::string::npos);
  ASSERT_GE(pair->beam_rank, 1);
  EXPECT_NE(pair->tgt_text.find("x //= 2"), std::string::npos) << pair->tgt_text;
  EXPECT_EQ(pair->forward.options, beam->candidates[pair->beam_rank].choices);
  for (int r = 0; r < pair->beam_rank; ++r) {
    EXPECT_NE(beam->candidates[r].rendering.text.find("x /= 2"), std::string::npos);
  }
}

TEST(FilterBeam, ReferenceAtRankZero) {
  auto pow = Typed(Dialect::kDJ, testing::kJavaPow);
  TestSuite suite = SuiteFor(pow, "pow");
  for (Dialect target : {Dialect::kDP, Dialect::kDC}) {
    auto beam = EnumerateCandidates(pow, "pow", target, AmbiguityModel::Perfect(), 20, 0.5);
    auto pair = FilterBeam(*beam, *PortSuite(suite, target), ExecLimits{});
    ASSERT_TRUE(pair.has_value());
    EXPECT_EQ(pair->beam_rank, 0);
    EXPECT_EQ(pair->tgt_text, Print(*ReferenceTranspile(pow, target)));
  }
}

TEST(FilterBeam, NoPassWhenOnlyWrongCandidates) {
  auto fn = Typed(Dialect::kDJ,
                  "static int lo(int a, int b) {\n  if (a < b) {\n    return a;\n  }\n  return b;\n}\n");
  TestSuite suite = SuiteFor(fn, "lo");
  AmbiguityModel m = AmbiguityModel::WithNoise({{{SiteKind::kConditionPolarity, 1.0}}});
  auto beam = EnumerateCandidates(fn, "lo", Dialect::kDC, m, 1, 0.5);
  ASSERT_EQ(beam->candidates.size(), 1u);
  auto pair = FilterBeam(*beam, *PortSuite(suite, Dialect::kDC), ExecLimits{});
  ASSERT_FALSE(pair.has_value());
  EXPECT_EQ(pair.error().candidates, 1);
}

TEST(Corpus, EveryPairPassesOnRecheck) {
  const auto& fns = SmallCorpus();
  PipelineConfig cfg;
  Corpus corpus = BuildCorpusOffline(fns, AmbiguityModel::Uniform(), cfg);
  ASSERT_FALSE(corpus.pairs.empty());
  std::map<std::string, const TestSuite*> suites;
  for (const CorpusFunction& f : fns) {
    if (f.suite) suites[f.id] = &*f.suite;
  }
  for (const ParallelPair& p : corpus.pairs) {
    ASSERT_TRUE(suites.count(p.src_id));
    EXPECT_TRUE(RecheckPair(p, *suites[p.src_id], cfg.limits)) << p.src_id << "\n" << p.tgt_text;
    EXPECT_EQ(p.forward.options.size(), p.forward.kinds.size());
    EXPECT_EQ(p.iteration, 1);
  }
  for (const char* name : {"DJ-DP", "DJ-DC", "DP-DC"}) EXPECT_GT(corpus.report.pairs[name], 0) << name;
}

TEST(Corpus, EmptyInput) {
  Corpus corpus = BuildCorpusOffline({}, AmbiguityModel::Uniform(), PipelineConfig{});
  EXPECT_TRUE(corpus.pairs.empty());
  EXPECT_TRUE(corpus.report.pairs.empty());
  EXPECT_TRUE(TrainingBatch(corpus.pairs).empty());
}

TEST(Corpus, UnselectedFunctionsSkipped) {
  std::vector<CorpusFunction> fns = SmallCorpus();
  for (CorpusFunction& f : fns) f.suite.reset();
  EXPECT_TRUE(BuildCorpusOffline(fns, AmbiguityModel::Uniform(), PipelineConfig{}).pairs.empty());
}

TEST(Corpus, SameAcrossJobCounts) {
  PipelineConfig one, three;
  three.jobs = 3;
  Corpus a = BuildCorpusOffline(SmallCorpus(), AmbiguityModel::Uniform(), one);
  Corpus b = BuildCorpusOffline(SmallCorpus(), AmbiguityModel::Uniform(), three);
  ASSERT_EQ(a.pairs.size(), b.pairs.size());
  for (size_t i = 0; i < a.pairs.size(); ++i) EXPECT_EQ(a.pairs[i].tgt_text, b.pairs[i].tgt_text);
}

ParallelPair StubPair() {
  ParallelPair p;
  p.src_id = "stub";
  p.forward = {Dialect::kDJ, Dialect::kDP, {SiteKind::kIntDivRendering}, {0}};
  return p;
}

PairSource StubSource() {
  return [](const AmbiguityModel&, std::int64_t) { return std::vector<ParallelPair>{StubPair()}; };
}

double MeanTimesTrained(const std::map<int, std::int64_t>& hist, std::int64_t* total = nullptr) {
  double sum = 0;
  std::int64_t n = 0;
  for (const auto& [t, c] : hist) {
    sum += static_cast<double>(t) * static_cast<double>(c);
    n += c;
  }
  if (total) *total = n;
  return n ? sum / static_cast<double>(n) : 0.0;
}

TEST(Online, DrainedLifetimeMatchesGeometricMean) {
  OnlineConfig cfg;
  cfg.steps = 40000;
  cfg.drain = true;
  OnlineResult r = TrainOnline(AmbiguityModel::Uniform(), CacheConfig{}, cfg, StubSource());
  std::int64_t retired = 0;
  double mean = MeanTimesTrained(r.retired_histogram, &retired);
  EXPECT_GE(retired, 10000);
  EXPECT_NEAR(mean, 1.0 + 1.0 / 0.3, 0.5);
  EXPECT_TRUE(r.live_histogram.empty());
}

TEST(Online, CertainRemovalTrainsAtMostTwice) {
  CacheConfig cache;
  cache.p_remove = 1.0;
  cache.warmup_min = 10;
  OnlineConfig cfg;
  cfg.steps = 5000;
  OnlineResult r = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, StubSource());
  ASSERT_FALSE(r.retired_histogram.empty());
  for (const auto& [t, c] : r.retired_histogram) EXPECT_EQ(t, 2);
  for (const auto& [t, c] : r.live_histogram) EXPECT_TRUE(t == 1 || t == 2);
}

TEST(Online, NoSamplingBeforeWarmup) {
  CacheConfig cache;
  cache.warmup_min = 1000;
  OnlineConfig cfg;
  cfg.steps = 999;
  OnlineResult r = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, StubSource());
  for (const CacheEvent& e : r.events) EXPECT_NE(e.kind, CacheEventKind::kSample);
  EXPECT_EQ(r.updates, 999);
  EXPECT_EQ(r.live_histogram[1], 999);
}

TEST(Online, CacheConservation) {
  CacheConfig cache;
  cache.warmup_min = 50;
  cache.capacity = 200;
  OnlineConfig cfg;
  cfg.steps = 4000;
  cfg.initial_cache.assign(30, StubPair());
  OnlineResult r = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, StubSource());
  std::int64_t retired = 0, live = 0;
  MeanTimesTrained(r.retired_histogram, &retired);
  MeanTimesTrained(r.live_histogram, &live);
  EXPECT_EQ(r.inserted, retired + live);
  EXPECT_EQ(r.removed, retired);
  EXPECT_LE(live, 200);
  std::int64_t samples = 0, generates = 0;
  size_t size = 0;
  for (const CacheEvent& e : r.events) {
    samples += e.kind == CacheEventKind::kSample;
    generates += e.kind == CacheEventKind::kGenerate;
    size = e.cache_size;
  }
  EXPECT_EQ(static_cast<size_t>(live), size);
  EXPECT_EQ(samples + generates, r.steps);
  // Every stub pair trains one IntDiv count.
  EXPECT_EQ(r.model.Counts({SiteKind::kIntDivRendering, Dialect::kDJ, Dialect::kDP})[0],
            1.0 + static_cast<double>(r.updates));
}

TEST(Online, MaxUpdatesStopsEarly) {
  OnlineConfig cfg;
  cfg.steps = 1000;
  cfg.max_updates = 17;
  OnlineResult r = TrainOnline(AmbiguityModel::Uniform(), CacheConfig{}, cfg, StubSource());
  EXPECT_EQ(r.updates, 17);
  EXPECT_EQ(r.steps, 17);
}

TEST(Online, SeededRunsRepeat) {
  CacheConfig cache;
  cache.warmup_min = 20;
  OnlineConfig cfg;
  cfg.steps = 3000;
  OnlineResult a = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, StubSource());
  OnlineResult b = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, StubSource());
  EXPECT_EQ(a.retired_histogram, b.retired_histogram);
  EXPECT_EQ(a.events.size(), b.events.size());
  cache.seed = 2;
  OnlineResult c = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, StubSource());
  EXPECT_NE(a.retired_histogram, c.retired_histogram);
}

TEST(Online, CorpusSourceTrainsRealPairs) {
  PipelineConfig pcfg;
  OnlineConfig cfg;
  cfg.steps = 30;
  OnlineResult r = TrainOnline(AmbiguityModel::Uniform(), CacheConfig{}, cfg,
                               CorpusPairSource(SmallCorpus(), pcfg, 1));
  EXPECT_GT(r.updates, 30);
  EXPECT_NE(r.model, AmbiguityModel::Uniform());
  EXPECT_GT(r.pairs["DJ-DP"], 0);
}

AmbiguityModel Concentrated() {
  std::vector<DirectedChoices> batch;
  for (SiteKind k : kSiteKinds) {
    for (Dialect s : kDialects) {
      for (Dialect t : kDialects) {
        if (s != t) batch.push_back({s, t, std::vector<SiteKind>(1000, k), std::vector<int>(1000, 0)});
      }
    }
  }
  return AmbiguityModel::Uniform().LearnUpdate(batch);
}

TEST(Offline, ConcentratedModelIsStable) {
  auto bench = LoadBenchmark(testing::DataPath("data/benchmark/entries.jsonl"));
  ASSERT_TRUE(bench.has_value());
  EvalOptions opts;
  opts.filter = [](const BenchmarkEntry& e) { return e.split == "validation" && OverflowFree(e); };
  Validator validate = [&](const AmbiguityModel& m) { return MeanCa1(m, *bench, opts); };
  OfflineResult r = TrainOffline(SmallCorpus(), Concentrated(), 2, PipelineConfig{}, validate);
  ASSERT_EQ(r.reports.size(), 2u);
  EXPECT_DOUBLE_EQ(r.baseline_ca1, 1.0);
  for (const IterationReport& rep : r.reports) {
    EXPECT_DOUBLE_EQ(rep.validation_ca1, r.baseline_ca1);
    EXPECT_TRUE(rep.accepted);
  }
  EXPECT_EQ(r.reports[0].pairs, r.reports[1].pairs);
}

TEST(Offline, OneIterationIsBuildPlusUpdate) {
  PipelineConfig cfg;
  Validator zero = [](const AmbiguityModel&) { return 0.0; };
  OfflineResult r = TrainOffline(SmallCorpus(), AmbiguityModel::Uniform(), 1, cfg, zero);
  Corpus corpus = BuildCorpusOffline(SmallCorpus(), AmbiguityModel::Uniform(), cfg);
  AmbiguityModel expected = AmbiguityModel::Uniform().LearnUpdate(TrainingBatch(corpus.pairs));
  EXPECT_EQ(r.best, expected);
  ASSERT_EQ(r.reports.size(), 1u);
  EXPECT_EQ(r.reports[0].pairs, corpus.report.pairs);
  EXPECT_EQ(r.reports[0].updates, static_cast<int>(corpus.pairs.size()));
  EXPECT_EQ(r.reports[0].model_id, ModelId(expected));
}

TEST(Offline, WorseSnapshotIsNotKept) {
  int calls = 0;
  Validator falling = [&](const AmbiguityModel&) { return 1.0 - 0.1 * calls++; };
  OfflineResult r = TrainOffline(SmallCorpus(), AmbiguityModel::Uniform(), 2, PipelineConfig{}, falling);
  EXPECT_EQ(r.best, AmbiguityModel::Uniform());
  for (const IterationReport& rep : r.reports) EXPECT_FALSE(rep.accepted);
}

}  // namespace
}  // namespace xlt
