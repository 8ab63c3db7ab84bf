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

#include "xlt/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "xlt/parallel.h"
#include "xlt/parse.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"

namespace xlt {

Json EntryToJson(const BenchmarkEntry& e) {
  Json j;
  j["id"] = e.id;
  j["split"] = e.split;
  j["tag"] = e.overflow_divergent ? "overflow-divergent" : "overflow-free";
  Json fns = Json::object();
  for (const auto& [d, fn] : e.fns) fns[std::string(DialectName(d))] = Print(fn.def);
  j["functions"] = std::move(fns);
  Json suites = Json::object();
  for (const auto& [d, s] : e.eval_suites) suites[std::string(DialectName(d))] = SuiteToJson(s);
  j["eval_suites"] = std::move(suites);
  return j;
}

Expected<BenchmarkEntry, std::string> EntryFromJson(const Json& j) {
  BenchmarkEntry e;
  try {
    e.id = j.at("id").get<std::string>();
    e.split = j.at("split").get<std::string>();
    std::string tag = j.at("tag").get<std::string>();
    if (tag != "overflow-free" && tag != "overflow-divergent") {
      return MakeUnexpected("entry " + e.id + ": unknown tag " + tag);
    }
    e.overflow_divergent = tag == "overflow-divergent";
    for (const auto& [name, text] : j.at("functions").items()) {
      auto d = DialectFromName(name);
      if (!d) return MakeUnexpected("entry " + e.id + ": unknown dialect " + name);
      auto parsed = Parse(*d, text.get<std::string>());
      if (!parsed) return MakeUnexpected("entry " + e.id + ": " + parsed.error().ToString());
      auto typed = Typecheck(*parsed);
      if (!typed) return MakeUnexpected("entry " + e.id + ": " + typed.error().ToString());
      e.fns.emplace(*d, std::move(*typed));
    }
    for (const auto& [name, sj] : j.at("eval_suites").items()) {
      auto d = DialectFromName(name);
      if (!d) return MakeUnexpected("entry " + e.id + ": unknown dialect " + name);
      auto s = SuiteFromJson(sj);
      if (!s) return MakeUnexpected("entry " + e.id + ": " + s.error());
      e.eval_suites.emplace(*d, std::move(*s));
    }
  } catch (const std::exception& ex) {
    return MakeUnexpected(std::string("bad benchmark entry: ") + ex.what());
  }
  return e;
}

Expected<Benchmark, std::string> LoadBenchmark(const std::string& path) {
  auto text = ReadFile(path);
  if (!text) return MakeUnexpected(text.error());
  auto lines = ParseJsonLines(*text);
  if (!lines) return MakeUnexpected(path + ": " + lines.error());
  Benchmark b;
  for (const Json& j : *lines) {
    auto e = EntryFromJson(j);
    if (!e) return MakeUnexpected(path + ": " + e.error());
    b.entries.push_back(std::move(*e));
  }
  return b;
}

bool OverflowFree(const BenchmarkEntry& e) { return !e.overflow_divergent; }

EntryFilter SplitFilter(const std::string& split) {
  return [split](const BenchmarkEntry& e) {
    return !e.overflow_divergent && (split.empty() || e.split == split);
  };
}

Json CAReportToJson(const CAReport& r) {
  Json j;
  j["pair"] = std::string(DialectName(r.src)) + "-" + std::string(DialectName(r.tgt));
  j["n"] = r.n;
  j["k"] = r.k;
  j["entries"] = r.entries;
  j["passed"] = r.passed;
  j["ratio"] = r.ratio;
  if (r.missing_suites > 0) j["missing_suites"] = r.missing_suites;
  Json verdicts = Json::array();
  for (const EntryVerdict& v : r.verdicts) {
    Json vj;
    vj["entry"] = v.entry_id;
    vj["passed"] = v.passed;
    vj["pass_rank"] = v.pass_rank;
    if (v.unsupported) vj["unsupported"] = true;
    verdicts.push_back(std::move(vj));
  }
  j["verdicts"] = std::move(verdicts);
  return j;
}

std::string CAReportSummary(const CAReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s-%s CA@%d=%.3f (%d/%d, k=%d)",
                std::string(DialectName(r.src)).c_str(), std::string(DialectName(r.tgt)).c_str(),
                r.n, r.ratio, r.passed, r.entries, r.k);
  return buf;
}

namespace {

bool CandidatePasses(const Candidate& c, const TestSuite& suite, const ExecLimits& limits) {
  if (!c.rendering.fn) return false;
  auto typed = Typecheck(*c.rendering.fn);
  return typed && PassesSuite(*typed, suite, limits);
}

void ShuffleTies(Beam& beam, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto& cs = beam.candidates;
  size_t start = 0;
  while (start < cs.size()) {
    size_t end = start + 1;
    long long key = std::llround(cs[start].score * 1e9);
    while (end < cs.size() && std::llround(cs[end].score * 1e9) == key) ++end;
    std::shuffle(cs.begin() + static_cast<std::ptrdiff_t>(start),
                 cs.begin() + static_cast<std::ptrdiff_t>(end), rng);
    start = end;
  }
}

std::vector<const BenchmarkEntry*> Selected(const Benchmark& bench, const EvalOptions& opts,
                                            Dialect src, Dialect tgt) {
  std::vector<const BenchmarkEntry*> out;
  for (const BenchmarkEntry& e : bench.entries) {
    if (opts.filter && !opts.filter(e)) continue;
    if (!e.fns.count(src) || !e.eval_suites.count(tgt)) continue;
    out.push_back(&e);
  }
  return out;
}

// Enumerates the entry's beam. Returns false when the source is untranslatable.
bool EntryBeam(const AmbiguityModel& model, const BenchmarkEntry& e, Dialect src, Dialect tgt,
               const EvalOptions& opts, Beam& beam) {
  auto b = EnumerateCandidates(e.fns.at(src), e.id, tgt, model, opts.k, opts.alpha);
  if (!b) return false;
  beam = std::move(*b);
  if (opts.tie_seed) {
    std::string tag = e.id + "/" + std::string(DialectName(src)) + "/" +
                      std::string(DialectName(tgt));
    ShuffleTies(beam, *opts.tie_seed ^ StableHash(tag));
  }
  return true;
}

CAReport Finish(CAReport r, std::vector<EntryVerdict> verdicts) {
  r.verdicts = std::move(verdicts);
  r.entries = static_cast<int>(r.verdicts.size());
  r.passed = 0;
  for (const EntryVerdict& v : r.verdicts) r.passed += v.passed ? 1 : 0;
  r.ratio = r.entries == 0 ? 0.0 : static_cast<double>(r.passed) / r.entries;
  return r;
}

}  // namespace

CAReport CaAtN(const AmbiguityModel& model, const Benchmark& bench, Dialect src, Dialect tgt,
               const EvalOptions& opts) {
  CAReport r;
  r.src = src;
  r.tgt = tgt;
  r.n = opts.n;
  r.k = opts.k;
  std::vector<const BenchmarkEntry*> entries = Selected(bench, opts, src, tgt);
  std::vector<EntryVerdict> verdicts(entries.size());
  ParallelFor(entries.size(), opts.jobs, [&](size_t i) {
    const BenchmarkEntry& e = *entries[i];
    EntryVerdict& v = verdicts[i];
    v.entry_id = e.id;
    Beam beam;
    if (!EntryBeam(model, e, src, tgt, opts, beam)) {
      v.unsupported = true;
      return;
    }
    const TestSuite& suite = e.eval_suites.at(tgt);
    size_t top = std::min(beam.candidates.size(), static_cast<size_t>(std::max(opts.n, 0)));
    for (size_t rank = 0; rank < top; ++rank) {
      if (CandidatePasses(beam.candidates[rank], suite, opts.limits)) {
        v.passed = true;
        v.pass_rank = static_cast<int>(rank);
        return;
      }
    }
  });
  return Finish(std::move(r), std::move(verdicts));
}

double MeanCa1(const AmbiguityModel& model, const Benchmark& bench, const EvalOptions& opts) {
  EvalOptions one = opts;
  one.n = 1;
  double total = 0.0;
  int pairs = 0;
  for (Dialect s : kDialects) {
    for (Dialect t : kDialects) {
      if (s == t) continue;
      total += CaAtN(model, bench, s, t, one).ratio;
      ++pairs;
    }
  }
  return total / pairs;
}

CAReport BeamReorderEval(const AmbiguityModel& model, const Benchmark& bench, Dialect src,
                         Dialect tgt, const std::map<std::string, TestSuite>& pipeline_suites,
                         const EvalOptions& opts) {
  CAReport r;
  r.src = src;
  r.tgt = tgt;
  r.n = 1;
  r.k = opts.k;
  std::vector<const BenchmarkEntry*> entries;
  for (const BenchmarkEntry* e : Selected(bench, opts, src, tgt)) {
    if (pipeline_suites.count(e->id)) {
      entries.push_back(e);
    } else {
      ++r.missing_suites;
    }
  }
  std::vector<EntryVerdict> verdicts(entries.size());
  ParallelFor(entries.size(), opts.jobs, [&](size_t i) {
    const BenchmarkEntry& e = *entries[i];
    EntryVerdict& v = verdicts[i];
    v.entry_id = e.id;
    Beam beam;
    if (!EntryBeam(model, e, src, tgt, opts, beam) || beam.candidates.empty()) {
      v.unsupported = true;
      return;
    }
    auto ported = PortSuite(pipeline_suites.at(e.id), tgt);
    if (ported) {
      std::stable_partition(beam.candidates.begin(), beam.candidates.end(),
                            [&](const Candidate& c) {
                              return CandidatePasses(c, *ported, opts.limits);
                            });
    }
    if (CandidatePasses(beam.candidates[0], e.eval_suites.at(tgt), opts.limits)) {
      v.passed = true;
      v.pass_rank = 0;
    }
  });
  return Finish(std::move(r), std::move(verdicts));
}

}  // namespace xlt
