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

// Acceptance run: one PASS/FAIL line per criterion A1..A9 on stdout,
// measurements on stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlt/cli.h"
#include "xlt/eval.h"
#include "xlt/exec.h"
#include "xlt/parallel.h"
#include "xlt/parse.h"
#include "xlt/pipeline.h"
#include "xlt/records.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"
#include "xlt/translate.h"
#include "xlt/typecheck.h"

namespace xlt {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::ostream& Log() { return std::cerr; }

std::string Fmt(double v, int digits = 3) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string Slurp(const std::string& path) {
  auto text = ReadFile(path);
  if (!text) {
    Log() << text.error() << "\n";
    std::exit(3);
  }
  return *text;
}

TypedFunction MustType(Dialect d, const std::string& src) {
  auto fn = Parse(d, src);
  if (!fn) {
    Log() << fn.error().ToString() << "\n";
    std::exit(3);
  }
  auto typed = Typecheck(*fn);
  if (!typed) {
    Log() << typed.error().ToString() << "\n";
    std::exit(3);
  }
  return *typed;
}

class Acceptance {
 public:
  Acceptance(int seeds, int jobs) : seeds_(seeds), jobs_(jobs) {
    auto fns = LoadCorpusFunctions(Slurp(std::string(XLT_SOURCE_DIR) + "/data/corpus.dj"), Dialect::kDJ);
    if (!fns) {
      Log() << fns.error() << "\n";
      std::exit(3);
    }
    functions_ = std::move(*fns);
    auto bench = LoadBenchmark(DefaultBenchmarkPath());
    if (!bench) {
      Log() << bench.error() << "\n";
      std::exit(3);
    }
    bench_ = std::move(*bench);
    pipeline_.jobs = jobs;
  }

  Verdict A1();
  Verdict A2();
  Verdict A3();
  Verdict A4();
  Verdict A5();
  Verdict A6();
  Verdict A7();
  Verdict A8();
  Verdict A9();

 private:
  static std::string DefaultBenchmarkPath() {
    return std::string(XLT_SOURCE_DIR) + "/data/benchmark/entries.jsonl";
  }

  EvalOptions Split(const std::string& split, int n = 1, int k = 10) const {
    EvalOptions o;
    o.n = n;
    o.k = k;
    o.jobs = jobs_;
    o.filter = [split](const BenchmarkEntry& e) {
      return (split == "all" || e.split == split) && OverflowFree(e);
    };
    return o;
  }

  // Corpus functions with selected suites for one test generation seed.
  const std::vector<CorpusFunction>& SeedCorpus(std::uint64_t seed) {
    auto it = corpora_.find(seed);
    if (it != corpora_.end()) return it->second;
    std::vector<CorpusFunction> fns = functions_;
    GenConfig gen;
    gen.seed = seed;
    gen.jobs = jobs_;
    auto t0 = Clock::now();
    AttachSelectedSuites(fns, gen);
    Log() << "  suites for seed " << seed << ": "
          << std::count_if(fns.begin(), fns.end(), [](const CorpusFunction& f) { return f.suite.has_value(); })
          << "/" << fns.size() << " selected in " << Seconds(t0) << " s\n";
    return corpora_.emplace(seed, std::move(fns)).first->second;
  }

  // Offline training for a seed, shared by A2 and A3.
  const OfflineResult& Offline(std::uint64_t seed) {
    auto it = offline_.find(seed);
    if (it != offline_.end()) return it->second;
    EvalOptions val = Split("validation");
    Validator validate = [&](const AmbiguityModel& m) { return MeanCa1(m, bench_, val); };
    auto t0 = Clock::now();
    OfflineResult r = TrainOffline(SeedCorpus(seed), AmbiguityModel::Uniform(), 3, pipeline_, validate);
    Log() << "  offline seed " << seed << ": 3 iterations in " << Seconds(t0) << " s\n";
    return offline_.emplace(seed, std::move(r)).first->second;
  }

  static std::string Seconds(Clock::time_point t0) {
    return Fmt(std::chrono::duration<double>(Clock::now() - t0).count(), 1);
  }

  int seeds_;
  int jobs_;
  std::vector<CorpusFunction> functions_;
  Benchmark bench_;
  PipelineConfig pipeline_;
  std::map<std::uint64_t, std::vector<CorpusFunction>> corpora_;
  std::map<std::uint64_t, OfflineResult> offline_;
};

const char* kPow =
    "static int pow(int b, int e) {\n"
    "  int r = 1;\n"
    "  while (e > 0) {\n"
    "    if ((e & 1) == 1) {\n"
    "      r = r * b;\n"
    "    }\n"
    "    b = b * b;\n"
    "    e = e >> 1;\n"
    "  }\n"
    "  return r;\n"
    "}\n";

const char* kClamp =
    "static double clamp(double a, double min, double max) {\n"
    "  return a<min?min:(a>max?max:a);\n"
    "}\n";

Verdict Acceptance::A1() {
  TypedFunction pow = MustType(Dialect::kDJ, kPow);
  TypedFunction clamp = MustType(Dialect::kDJ, kClamp);
  struct Case {
    int b, e, want;
  };
  bool ok = true;
  std::string detail;
  for (Case c : {Case{-1, -1, 1}, Case{0, 1, 0}, Case{1, 1, 1}, Case{-13133, 2743, -1787379173}}) {
    ExecOutcome o = Execute(pow, {Value::I32(c.b), Value::I32(c.e)});
    bool hit = o.status == ExecStatus::kOk && o.return_value && o.return_value->tag() == TypeKind::kI32 &&
               o.return_value->AsFixed() == c.want;
    ok = ok && hit;
    detail += "pow(" + std::to_string(c.b) + "," + std::to_string(c.e) + ")=" +
              (o.return_value ? o.return_value->Format() : "?") + " ";
  }
  ExecOutcome o = Execute(clamp, {Value::F64(742.0), Value::F64(0.0), Value::F64(0.0)});
  ok = ok && o.status == ExecStatus::kOk && o.return_value &&
       ValuesMatch(*o.return_value, Value::F64(0.0), 0.01);
  detail += "clamp(742.0,0.0,0.0)=" + (o.return_value ? o.return_value->Format() : "?");
  return {ok, detail};
}

Verdict Acceptance::A2() {
  EvalOptions test = Split("test");
  std::vector<double> gain, third;
  for (int s = 1; s <= seeds_; ++s) {
    const OfflineResult& r = Offline(static_cast<std::uint64_t>(s));
    double base = MeanCa1(AmbiguityModel::Uniform(), bench_, test);
    double one = MeanCa1(r.models.at(0), bench_, test);
    double three = MeanCa1(r.best, bench_, test);
    Log() << "  A2 seed " << s << ": uniform " << Fmt(base) << ", 1 iteration " << Fmt(one)
          << ", 3 iterations " << Fmt(three) << "\n";
    gain.push_back(one - base);
    third.push_back(three);
  }
  double g = Median(gain), t = Median(third);
  return {g >= 0.20 && t >= 0.95,
          "median gain after 1 iteration " + Fmt(g) + " (>= 0.200), median after 3 " + Fmt(t) + " (>= 0.950)"};
}

Verdict Acceptance::A3() {
  EvalOptions test = Split("test");
  std::vector<double> online, offline;
  for (int s = 1; s <= seeds_; ++s) {
    auto seed = static_cast<std::uint64_t>(s);
    const OfflineResult& r = Offline(seed);
    const int updates = r.reports.at(0).updates;
    CacheConfig cache;
    cache.seed = seed;
    OnlineConfig cfg;
    cfg.steps = std::int64_t{1} << 40;
    cfg.max_updates = updates;
    auto t0 = Clock::now();
    OnlineResult o = TrainOnline(AmbiguityModel::Uniform(), cache, cfg, CorpusPairSource(SeedCorpus(seed), pipeline_, seed));
    double on = MeanCa1(o.model, bench_, test);
    double off = MeanCa1(r.models.at(0), bench_, test);
    Log() << "  A3 seed " << s << ": " << updates << " updates, offline-1 " << Fmt(off) << ", online " << Fmt(on)
          << " (" << o.steps << " steps, " << Seconds(t0) << " s)\n";
    online.push_back(on);
    offline.push_back(off);
  }
  double on = Median(online), off = Median(offline);
  return {on >= off, "median online " + Fmt(on) + " vs offline-1 " + Fmt(off)};
}

Verdict Acceptance::A4() {
  const auto& fns = SeedCorpus(1);
  int selected = 0, wrong = 0;
  for (const CorpusFunction& f : fns) {
    if (!f.suite) continue;
    ++selected;
    if (!(f.suite->report.score > 0.9 && f.suite->assert_count >= 2)) ++wrong;
  }
  // Every unselected function must fail a rule when its suite is rebuilt.
  int unselected_ok = 0, unselected = 0;
  GenConfig gen;
  for (const CorpusFunction& f : fns) {
    if (f.suite) continue;
    ++unselected;
    auto s = EvolveSuite(f.fn, f.id, gen);
    if (!s || s->report.score <= 0.9 || s->assert_count < 2) ++unselected_ok;
  }
  TypedFunction constant = MustType(Dialect::kDJ, "static int f(int x) { return 8; }");
  auto cs = EvolveSuite(constant, "f", gen);
  bool constant_rejected = cs && !SelectSuite(*cs);
  double frac = static_cast<double>(selected) / static_cast<double>(fns.size());
  bool ok = wrong == 0 && unselected_ok == unselected && constant_rejected && frac > 0 && frac < 1;
  return {ok, "selected " + std::to_string(selected) + "/" + std::to_string(fns.size()) + " (" + Fmt(frac) +
                  "), rule violations " + std::to_string(wrong + unselected - unselected_ok) +
                  ", constant function " + (constant_rejected ? "rejected" : "ADMITTED")};
}

double MeanOf(const std::map<int, std::int64_t>& hist, std::int64_t& n) {
  double sum = 0;
  n = 0;
  for (const auto& [t, c] : hist) {
    sum += static_cast<double>(t) * static_cast<double>(c);
    n += c;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

Verdict Acceptance::A5() {
  ParallelPair stub;
  stub.src_id = "stub";
  stub.forward = {Dialect::kDJ, Dialect::kDP, {SiteKind::kIntDivRendering}, {0}};
  PairSource source = [&](const AmbiguityModel&, std::int64_t) { return std::vector<ParallelPair>{stub}; };
  OnlineConfig cfg;
  cfg.steps = 40000;
  OnlineResult open = TrainOnline(AmbiguityModel::Uniform(), CacheConfig{}, cfg, source);
  std::int64_t n_open = 0;
  double m_open = MeanOf(open.retired_histogram, n_open);
  Log() << "  A5 without draining: " << n_open << " retired, mean " << Fmt(m_open) << ", "
        << open.inserted - open.removed << " still cached\n";
  cfg.drain = true;
  OnlineResult drained = TrainOnline(AmbiguityModel::Uniform(), CacheConfig{}, cfg, source);
  std::int64_t n = 0;
  double m = MeanOf(drained.retired_histogram, n);
  const double want = 1.0 + 1.0 / 0.3;
  return {n >= 10000 && std::abs(m - want) <= 0.5,
          "drained cache: " + std::to_string(n) + " retired entries, mean times_trained " + Fmt(m) + " (want " +
              Fmt(want) + " +- 0.5)"};
}

Verdict Acceptance::A6() {
  const auto& fns = SeedCorpus(1);
  std::map<std::string, const TestSuite*> suites;
  for (const CorpusFunction& f : fns) {
    if (f.suite) suites[f.id] = &*f.suite;
  }
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> prob(0.0, 0.9);
  std::int64_t checked = 0, failed = 0;
  int rounds = 0;
  while (checked < 10000) {
    NoiseConfig noise;
    for (SiteKind k : kSiteKinds) {
      if (rng() % 4 != 0) noise.error_prob[k] = prob(rng);
    }
    PipelineConfig cfg = pipeline_;
    cfg.k = 5 + static_cast<int>(rng() % 16);
    Corpus corpus = BuildCorpusOffline(fns, AmbiguityModel::WithNoise(noise), cfg, rounds + 1);
    std::vector<char> ok(corpus.pairs.size(), 0);
    ParallelFor(corpus.pairs.size(), jobs_, [&](size_t i) {
      const ParallelPair& p = corpus.pairs[i];
      ok[i] = RecheckPair(p, *suites.at(p.src_id), cfg.limits);
    });
    for (char c : ok) failed += !c;
    checked += static_cast<std::int64_t>(ok.size());
    ++rounds;
  }
  return {failed == 0, std::to_string(checked) + " pairs from " + std::to_string(rounds) +
                           " noisy models re-checked, " + std::to_string(failed) + " failed"};
}

Verdict Acceptance::A7() {
  bool ok = true;
  int reports = 0;
  std::vector<AmbiguityModel> models = {AmbiguityModel::Uniform(),
                                        AmbiguityModel::WithNoise({{{SiteKind::kIntDivRendering, 0.6},
                                                                    {SiteKind::kTernarySwap, 0.4}}})};
  if (!offline_.empty()) models.push_back(offline_.begin()->second.models.at(0));
  for (const AmbiguityModel& m : models) {
    for (Dialect s : kDialects) {
      for (Dialect t : kDialects) {
        if (s == t) continue;
        EvalOptions o = Split("all", 1, 20);
        o.filter = {};
        double c1 = CaAtN(m, bench_, s, t, o).ratio;
        o.n = 10;
        double c10 = CaAtN(m, bench_, s, t, o).ratio;
        o.n = 20;
        double c20 = CaAtN(m, bench_, s, t, o).ratio;
        ok = ok && c1 <= c10 && c10 <= c20;
        ++reports;
      }
    }
  }
  double a = BeamScore(-2.0, 16, 0.5), b = BeamScore(-2.0, 25, 0.5);
  bool score = a == -0.5 && b == -0.4 && b > a;
  return {ok && score, std::to_string(reports) + " reports with CA@1 <= CA@10 <= CA@20: " + (ok ? "yes" : "NO") +
                           "; scores " + Fmt(a, 2) + " < " + Fmt(b, 2)};
}

Verdict Acceptance::A8() {
  int divergent = 0, both = 0;
  for (const BenchmarkEntry& e : bench_.entries) {
    if (!e.overflow_divergent) continue;
    ++divergent;
    const TypedFunction& src = e.fns.at(Dialect::kDJ);
    auto sites = DetectSites(src, Dialect::kDP);
    if (!sites) continue;
    std::vector<int> wrap(sites->size(), 0), big(sites->size(), 0);
    bool has_cast = false;
    for (size_t i = 0; i < sites->size(); ++i) {
      if ((*sites)[i].kind == SiteKind::kIntCastPolicy) {
        big[i] = 1;
        has_cast = true;
      }
    }
    if (!has_cast) continue;
    auto render = [&](const std::vector<int>& choices) -> std::optional<TypedFunction> {
      auto r = RenderTranslation(src, Dialect::kDP, choices);
      if (!r || !r->fn) return std::nullopt;
      auto t = Typecheck(*r->fn);
      if (!t) return std::nullopt;
      return *t;
    };
    auto w = render(wrap), b = render(big);
    if (!w || !b) continue;
    // The pipeline suite is generated from the fixed-width source and ported.
    auto suite = EvolveSuite(src, e.id, GenConfig{});
    if (!suite) continue;
    auto ported = PortSuite(*suite, Dialect::kDP);
    if (!ported) continue;
    const TestSuite& eval = e.eval_suites.at(Dialect::kDP);
    ExecLimits lim;
    bool pipeline_dir = PassesSuite(*w, *ported, lim) && !PassesSuite(*b, *ported, lim);
    bool eval_dir = PassesSuite(*b, eval, lim) && !PassesSuite(*w, eval, lim);
    Log() << "  A8 " << e.id << ": pipeline suite wrap-only " << pipeline_dir << ", eval suite bigint-only "
          << eval_dir << "\n";
    both += pipeline_dir && eval_dir;
  }
  return {both >= 3, std::to_string(both) + " of " + std::to_string(divergent) +
                         " divergent entries show both directions (need >= 3)"};
}

struct StageRun {
  std::string transcript;  // stdout of every stage plus every output file
  bool ok = true;
};

StageRun RunStages(const fs::path& dir, int jobs) {
  fs::remove_all(dir);
  fs::create_directories(dir / "out");
  std::string config = (dir / "config.json").string();
  Json cfg = {{"paths", {{"corpus_dir", (dir / "out").string()}, {"model_file", (dir / "out/model.jsonl").string()}}},
              {"seeds", {{"eval", 3}}}};
  (void)WriteFile(config, cfg.dump());
  std::vector<std::vector<std::string>> stages = {
      {"gen-tests", "--limit", "30"},
      {"select-suites"},
      {"port-tests", "--target", "DP"},
      {"port-tests", "--target", "DC"},
      {"mutants", "--function", "count_bits_c1", "--suites", (dir / "out/suites.jsonl").string()},
      {"translate", "--function", "count_bits_c1", "--target", "DP", "--k", "5"},
      {"build-corpus"},
      {"train-offline", "--iterations", "2"},
      {"train-online", "--steps", "300", "--events", (dir / "out/events.jsonl").string()},
      {"eval", "--pair", "all", "--model", (dir / "out/model.jsonl").string()},
      {"report", (dir / "out/offline_reports.jsonl").string(), (dir / "out/online_stats.json").string(),
       (dir / "out/eval.jsonl").string()},
  };
  StageRun run;
  for (auto args : stages) {
    args.insert(args.begin(), {"--config", config, "--jobs", std::to_string(jobs)});
    std::ostringstream out, err;
    int code = RunCli(args, out, err);
    if (code != 0) {
      Log() << "  stage " << args[4] << " exited " << code << ": " << err.str() << "\n";
      run.ok = false;
    }
    run.transcript += "## " + args[4] + "\n" + out.str();
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir / "out")) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) run.transcript += "## " + f.filename().string() + "\n" + Slurp(f.string());
  // Records that name a path embed the run directory; compare relative to it.
  const std::string d = dir.string();
  for (size_t p; (p = run.transcript.find(d)) != std::string::npos;) run.transcript.replace(p, d.size(), "$DIR");
  return run;
}

Verdict Acceptance::A9() {
  fs::path base = fs::temp_directory_path() / "xlt_acceptance";
  StageRun a = RunStages(base / "a", 1);
  StageRun b = RunStages(base / "b", 1);
  StageRun c = RunStages(base / "c", 3);
  fs::remove_all(base);
  bool rerun = a.transcript == b.transcript, jobs = a.transcript == c.transcript;
  return {a.ok && b.ok && c.ok && rerun && jobs,
          std::to_string(a.transcript.size()) + " bytes of stage output; rerun identical: " + (rerun ? "yes" : "NO") +
              ", --jobs 1 vs 3 identical: " + (jobs ? "yes" : "NO")};
}

}  // namespace
}  // namespace xlt

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria A1..A9", "xlt_acceptance"};
  std::vector<std::string> only;
  int seeds = 5, jobs = 1;
  app.add_option("--only", only, "criteria to run, e.g. A1 A5")->delimiter(',');
  app.add_option("--seeds", seeds, "seeds for A2 and A3")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  xlt::Acceptance acc(seeds, jobs);
  using Fn = xlt::Verdict (xlt::Acceptance::*)();
  const std::vector<std::pair<std::string, Fn>> criteria = {
      {"A1", &xlt::Acceptance::A1}, {"A2", &xlt::Acceptance::A2}, {"A3", &xlt::Acceptance::A3},
      {"A4", &xlt::Acceptance::A4}, {"A5", &xlt::Acceptance::A5}, {"A6", &xlt::Acceptance::A6},
      {"A7", &xlt::Acceptance::A7}, {"A8", &xlt::Acceptance::A8}, {"A9", &xlt::Acceptance::A9}};
  std::set<std::string> wanted(only.begin(), only.end());
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    if (!wanted.empty() && !wanted.count(name)) continue;
    auto t0 = std::chrono::steady_clock::now();
    xlt::Verdict v = (acc.*fn)();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << name << " " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << " [" << xlt::Fmt(secs, 1)
              << " s]" << std::endl;
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
