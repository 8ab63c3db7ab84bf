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

// Builds the benchmark: golds in every dialect, evaluation suites generated
// independently from each gold, and the overflow tag.

#include <iostream>

#include <CLI11.hpp>

#include "xlt/eval.h"
#include "xlt/mutation.h"
#include "xlt/parse.h"
#include "xlt/records.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"
#include "xlt/translate.h"

namespace {

using namespace xlt;

// DP golds use unbounded integers, the natural reading of the source.
Expected<FunctionDef, std::string> PythonGold(const TypedFunction& fn) {
  auto sites = DetectSites(fn, Dialect::kDP);
  if (!sites) return MakeUnexpected(sites.error().message);
  std::vector<int> choices;
  for (const AmbiguitySite& s : *sites) choices.push_back(s.kind == SiteKind::kIntCastPolicy ? 1 : 0);
  auto r = RenderTranslation(fn, Dialect::kDP, choices);
  if (!r || !r->fn) return MakeUnexpected(std::string("DP gold does not parse"));
  return *r->fn;
}

// Whether some evaluation input gives a different observable outcome on the
// golds of two dialects.
bool Diverges(const BenchmarkEntry& e, const ExecLimits& limits) {
  for (const auto& [from, suite] : e.eval_suites) {
    for (const auto& [to, fn] : e.fns) {
      if (to == from) continue;
      auto ported = PortSuite(suite, to);
      if (!ported) return true;
      for (const TestCase& c : ported->cases) {
        ExecOutcome got = Execute(fn, c.args, limits);
        if (!OutcomesMatch(c.expected, got, c.float_tol)) return true;
      }
    }
  }
  return false;
}

int Run(const std::string& in_path, const std::string& out_path, std::uint64_t seed, int jobs) {
  auto text = ReadFile(in_path);
  if (!text) {
    std::cerr << text.error() << "\n";
    return 1;
  }
  auto lines = ParseJsonLines(*text);
  if (!lines) {
    std::cerr << lines.error() << "\n";
    return 1;
  }
  GenConfig gen;
  gen.seed = seed;
  gen.jobs = jobs;
  std::string out;
  int divergent = 0;
  for (const Json& line : *lines) {
    BenchmarkEntry e;
    e.id = line.at("id").get<std::string>();
    e.split = line.at("split").get<std::string>();
    auto parsed = Parse(Dialect::kDJ, line.at("dj").get<std::string>());
    if (!parsed) {
      std::cerr << e.id << ": " << parsed.error().ToString() << "\n";
      return 1;
    }
    auto dj = Typecheck(*parsed);
    if (!dj) {
      std::cerr << e.id << ": " << dj.error().ToString() << "\n";
      return 1;
    }
    auto dp = PythonGold(*dj);
    auto dc = ReferenceTranspile(*dj, Dialect::kDC);
    if (!dp || !dc) {
      std::cerr << e.id << ": not translatable\n";
      return 1;
    }
    e.fns.emplace(Dialect::kDJ, *dj);
    e.fns.emplace(Dialect::kDP, *Typecheck(*dp));
    e.fns.emplace(Dialect::kDC, *Typecheck(*dc));

    std::vector<std::vector<Value>> extra;
    for (const Json& args : line.at("extra_inputs")) {
      std::vector<Value> vals;
      for (const Json& a : args) vals.push_back(*ValueFromJson(a));
      extra.push_back(std::move(vals));
    }
    for (const auto& [d, fn] : e.fns) {
      std::string fid = e.id + "/" + std::string(DialectName(d));
      auto suite = EvolveSuite(fn, fid, gen);
      if (!suite) {
        std::cerr << fid << ": no viable inputs\n";
        return 1;
      }
      for (const auto& args : extra) {
        std::vector<Value> ported;
        for (const Value& v : args) ported.push_back(*PortValue(v, Dialect::kDJ, d));
        auto c = SynthesizeTest(fn, ported, gen.limits, gen.float_tol);
        if (c) suite->cases.push_back(std::move(*c));
      }
      suite->id = "eval/" + fid;
      suite->assert_count = SuiteAssertCount(fn.def, suite->cases);
      if (auto report = MutationScore(*suite, fn, gen.limits, jobs)) suite->report = *report;
      e.eval_suites.emplace(d, std::move(*suite));
    }
    e.overflow_divergent = Diverges(e, gen.limits);
    divergent += e.overflow_divergent ? 1 : 0;
    out += EntryToJson(e).dump() + "\n";
  }
  if (auto w = WriteFile(out_path, out); !w) {
    std::cerr << w.error() << "\n";
    return 1;
  }
  std::cout << lines->size() << " entries, " << divergent << " overflow-divergent\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builds benchmark entries from DJ sources"};
  std::string in_path = std::string(XLT_SOURCE_DIR) + "/data/benchmark/sources.jsonl";
  std::string out_path = std::string(XLT_SOURCE_DIR) + "/data/benchmark/entries.jsonl";
  std::uint64_t seed = 1009;
  int jobs = 1;
  app.add_option("--in", in_path, "DJ sources, one JSON record per line");
  app.add_option("--out", out_path, "benchmark entries to write");
  app.add_option("--seed", seed, "test generation seed");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  return Run(in_path, out_path, seed, jobs);
}
