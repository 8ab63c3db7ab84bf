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

#include "helpers.h"
#include "xlt/eval.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"

namespace xlt {
namespace {

using testing::Typed;

const Benchmark& Bundled() {
  static const Benchmark bench = [] {
    auto b = LoadBenchmark(testing::DataPath("data/benchmark/entries.jsonl"));
    EXPECT_TRUE(b.has_value());
    return b ? *b : Benchmark{};
  }();
  return bench;
}

EvalOptions Opts(int n, int k, EntryFilter filter = {}) {
  EvalOptions o;
  o.n = n;
  o.k = k;
  o.filter = std::move(filter);
  return o;
}

// One entry whose DJ gold has an if-condition and a ternary, both with
// same-length wrong options when rendered to DC.
BenchmarkEntry TwoSiteEntry() {
  BenchmarkEntry e;
  e.id = "pick";
  e.split = "test";
  e.fns[Dialect::kDJ] = Typed(Dialect::kDJ,
                              "static int pick(int a, int b) {\n"
                              "  if (a < b) {\n"
                              "    return a;\n"
                              "  }\n"
                              "  return b > 0 ? b : 0;\n"
                              "}\n");
  auto dc = Typecheck(*ReferenceTranspile(e.fns[Dialect::kDJ], Dialect::kDC));
  e.fns[Dialect::kDC] = *dc;
  auto suite = EvolveSuite(*dc, "pick", GenConfig{});
  EXPECT_TRUE(suite.has_value());
  e.eval_suites[Dialect::kDC] = *suite;
  return e;
}

TEST(Benchmark, LoadsAndCoversSiteKinds) {
  const Benchmark& b = Bundled();
  ASSERT_GE(b.entries.size(), 100u);
  std::map<SiteKind, int> seen;
  int divergent = 0;
  for (const BenchmarkEntry& e : b.entries) {
    EXPECT_TRUE(e.split == "validation" || e.split == "test") << e.id;
    EXPECT_EQ(e.fns.size(), 3u) << e.id;
    EXPECT_EQ(e.eval_suites.size(), 3u) << e.id;
    divergent += e.overflow_divergent;
    for (Dialect t : {Dialect::kDP, Dialect::kDC}) {
      auto sites = DetectSites(e.fns.at(Dialect::kDJ), t);
      ASSERT_TRUE(sites.has_value()) << e.id;
      for (const AmbiguitySite& s : *sites) ++seen[s.kind];
    }
  }
  for (SiteKind k : kSiteKinds) EXPECT_GE(seen[k], 3) << SiteKindName(k);
  EXPECT_GE(divergent, 3);
}

TEST(Benchmark, EntryJsonRoundTrip) {
  for (const BenchmarkEntry& e : Bundled().entries) {
    auto back = EntryFromJson(EntryToJson(e));
    ASSERT_TRUE(back.has_value()) << back.error();
    EXPECT_EQ(EntryToJson(*back).dump(), EntryToJson(e).dump());
  }
}

TEST(Benchmark, GoldsPassTheirOwnSuites) {
  for (const BenchmarkEntry& e : Bundled().entries) {
    for (const auto& [d, fn] : e.fns) {
      EXPECT_TRUE(PassesSuite(fn, e.eval_suites.at(d), ExecLimits{})) << e.id << " " << DialectName(d);
    }
  }
}

TEST(CaAtN, MonotoneInN) {
  AmbiguityModel m = AmbiguityModel::Uniform();
  for (auto [s, t] : {std::pair{Dialect::kDJ, Dialect::kDP}, std::pair{Dialect::kDC, Dialect::kDJ}}) {
    double c1 = CaAtN(m, Bundled(), s, t, Opts(1, 20)).ratio;
    double c10 = CaAtN(m, Bundled(), s, t, Opts(10, 20)).ratio;
    double c20 = CaAtN(m, Bundled(), s, t, Opts(20, 20)).ratio;
    EXPECT_LE(c1, c10);
    EXPECT_LE(c10, c20);
    EXPECT_LT(c1, 1.0);
  }
}

TEST(CaAtN, PerfectModel) {
  AmbiguityModel p = AmbiguityModel::Perfect();
  for (Dialect s : kDialects) {
    for (Dialect t : kDialects) {
      if (s == t) continue;
      CAReport r = CaAtN(p, Bundled(), s, t, Opts(1, 10, OverflowFree));
      EXPECT_EQ(r.passed, r.entries) << CAReportSummary(r);
      EXPECT_GT(r.entries, 50);
    }
  }
  // Divergent entries make the unfiltered score fall short for the pairs
  // that cross the fixed-width boundary.
  double worst = 1.0;
  for (Dialect t : {Dialect::kDP, Dialect::kDC}) {
    worst = std::min(worst, CaAtN(p, Bundled(), Dialect::kDJ, t, Opts(1, 10)).ratio);
  }
  worst = std::min(worst, CaAtN(p, Bundled(), Dialect::kDP, Dialect::kDJ, Opts(1, 10)).ratio);
  EXPECT_LT(worst, 1.0);
}

TEST(CaAtN, VerdictsAndSummary) {
  CAReport r = CaAtN(AmbiguityModel::Uniform(), Bundled(), Dialect::kDJ, Dialect::kDP,
                     Opts(10, 10, SplitFilter("validation")));
  int passed = 0;
  for (const EntryVerdict& v : r.verdicts) {
    passed += v.passed;
    EXPECT_EQ(v.passed, v.pass_rank >= 0);
    EXPECT_LT(v.pass_rank, 10);
  }
  EXPECT_EQ(passed, r.passed);
  EXPECT_EQ(static_cast<int>(r.verdicts.size()), r.entries);
  EXPECT_DOUBLE_EQ(r.ratio, static_cast<double>(r.passed) / r.entries);
  EXPECT_NE(CAReportSummary(r).find("DJ-DP CA@10="), std::string::npos);
  Json j = CAReportToJson(r);
  EXPECT_EQ(j["passed"], r.passed);
}

TEST(CaAtN, UniformTiesAverageToOneQuarter) {
  BenchmarkEntry e = TwoSiteEntry();
  // Pass set over the four joint choices, found by rendering each one.
  int passing = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      auto r = RenderTranslation(e.fns[Dialect::kDJ], Dialect::kDC, {a, b});
      auto typed = Typecheck(*r->fn);
      passing += typed && PassesSuite(*typed, e.eval_suites[Dialect::kDC], ExecLimits{});
    }
  }
  ASSERT_EQ(passing, 1);
  Benchmark bench{{e}};
  int hits = 0;
  const int kSeeds = 1000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    EvalOptions o = Opts(1, 10);
    o.tie_seed = static_cast<std::uint64_t>(seed);
    hits += CaAtN(AmbiguityModel::Uniform(), bench, Dialect::kDJ, Dialect::kDC, o).passed;
  }
  EXPECT_NEAR(static_cast<double>(hits) / kSeeds, 0.25, 0.05);
  // Without a tie seed the order is by text, so the result is fixed.
  double fixed = CaAtN(AmbiguityModel::Uniform(), bench, Dialect::kDJ, Dialect::kDC, Opts(1, 10)).ratio;
  EXPECT_EQ(fixed, CaAtN(AmbiguityModel::Uniform(), bench, Dialect::kDJ, Dialect::kDC, Opts(1, 10)).ratio);
  EXPECT_EQ(CaAtN(AmbiguityModel::Uniform(), bench, Dialect::kDJ, Dialect::kDC, Opts(4, 10)).passed, 1);
}

TEST(CaAtN, MissingSidesAreSkipped) {
  BenchmarkEntry e = TwoSiteEntry();
  Benchmark bench{{e}};
  CAReport r = CaAtN(AmbiguityModel::Uniform(), bench, Dialect::kDJ, Dialect::kDP, Opts(1, 10));
  EXPECT_EQ(r.entries, 0);
  EXPECT_DOUBLE_EQ(r.ratio, 0.0);
}

TEST(CaAtN, ParallelMatchesSerial) {
  EvalOptions a = Opts(1, 10), b = Opts(1, 10);
  b.jobs = 3;
  CAReport ra = CaAtN(AmbiguityModel::Uniform(), Bundled(), Dialect::kDP, Dialect::kDC, a);
  CAReport rb = CaAtN(AmbiguityModel::Uniform(), Bundled(), Dialect::kDP, Dialect::kDC, b);
  EXPECT_EQ(CAReportToJson(ra).dump(), CAReportToJson(rb).dump());
}

TEST(BeamReorder, TargetSuitesGiveCaAtK) {
  // With the target's own evaluation suites as pipeline suites, reordering
  // puts a passing candidate first whenever the beam has one.
  std::map<std::string, TestSuite> suites;
  for (const BenchmarkEntry& e : Bundled().entries) suites[e.id] = e.eval_suites.at(Dialect::kDP);
  AmbiguityModel m = AmbiguityModel::Uniform();
  CAReport plain10 = CaAtN(m, Bundled(), Dialect::kDJ, Dialect::kDP, Opts(10, 10));
  CAReport re = BeamReorderEval(m, Bundled(), Dialect::kDJ, Dialect::kDP, suites, Opts(1, 10));
  EXPECT_EQ(re.passed, plain10.passed);
  EXPECT_EQ(re.missing_suites, 0);
}

TEST(BeamReorder, BoundedByCaAtK) {
  std::map<std::string, TestSuite> suites;
  for (const BenchmarkEntry& e : Bundled().entries) suites[e.id] = e.eval_suites.at(Dialect::kDJ);
  AmbiguityModel m = AmbiguityModel::Uniform();
  CAReport plain10 = CaAtN(m, Bundled(), Dialect::kDJ, Dialect::kDC, Opts(10, 10));
  CAReport plain1 = CaAtN(m, Bundled(), Dialect::kDJ, Dialect::kDC, Opts(1, 10));
  CAReport re = BeamReorderEval(m, Bundled(), Dialect::kDJ, Dialect::kDC, suites, Opts(1, 10));
  EXPECT_LE(re.passed, plain10.passed);
  EXPECT_GT(re.passed, plain1.passed);
}

TEST(BeamReorder, MissingSuitesCounted) {
  CAReport r = BeamReorderEval(AmbiguityModel::Uniform(), Bundled(), Dialect::kDJ, Dialect::kDC, {},
                               Opts(1, 10));
  EXPECT_EQ(r.entries, 0);
  EXPECT_EQ(r.missing_suites, static_cast<int>(Bundled().entries.size()));
}

TEST(MeanCa1, PerfectIsOneOnOverflowFree) {
  EXPECT_DOUBLE_EQ(MeanCa1(AmbiguityModel::Perfect(), Bundled(), Opts(1, 10, OverflowFree)), 1.0);
  double u = MeanCa1(AmbiguityModel::Uniform(), Bundled(), Opts(1, 10, OverflowFree));
  EXPECT_GT(u, 0.0);
  EXPECT_LT(u, 0.9);
}

}  // namespace
}  // namespace xlt
