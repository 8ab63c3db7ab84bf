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

#include "xlt/config.h"

#include <cstdlib>
#include <set>

namespace xlt {
namespace {

Json LimitsToJson(const ExecLimits& l) {
  return Json{{"max_steps", l.max_steps}, {"max_print_bytes", l.max_print_bytes}};
}

class Reader {
 public:
  explicit Reader(std::string prefix) : prefix_(std::move(prefix)) {}

  // Checks that `j` is an object with no keys outside `known`.
  bool Object(const Json& j, std::initializer_list<const char*> known) {
    if (!j.is_object()) return Error("expected an object");
    std::set<std::string> names(known.begin(), known.end());
    for (const auto& [key, value] : j.items()) {
      if (!names.count(key)) return Error("unknown key '" + key + "'");
    }
    return true;
  }

  template <typename T>
  bool Get(const Json& j, const char* key, T& out) {
    if (!j.contains(key)) return true;
    try {
      out = j.at(key).get<T>();
    } catch (const std::exception&) {
      return Error(std::string("bad value for '") + key + "'");
    }
    return true;
  }

  bool Limits(const Json& j, ExecLimits& l) {
    Reader sub(prefix_ + "limits.");
    bool ok = sub.Object(j, {"max_steps", "max_print_bytes"}) && sub.Get(j, "max_steps", l.max_steps) &&
              sub.Get(j, "max_print_bytes", l.max_print_bytes);
    if (!ok) error_ = sub.error_;
    return ok;
  }

  bool Error(const std::string& msg) {
    if (error_.empty()) error_ = prefix_ + msg;
    return false;
  }

  std::string error_;

 private:
  std::string prefix_;
};

}  // namespace

std::string DefaultBenchmarkDir() { return std::string(XLT_SOURCE_DIR) + "/data/benchmark"; }

Json ConfigToJson(const RunConfig& cfg) {
  Json j;
  Json seeds;
  seeds["testgen"] = cfg.seeds.testgen;
  seeds["cache"] = cfg.seeds.cache;
  seeds["eval"] = cfg.seeds.eval ? Json(*cfg.seeds.eval) : Json(nullptr);
  j["seeds"] = std::move(seeds);
  Json gen;
  gen["int_bound"] = cfg.gen.int_bound;
  gen["max_evaluations"] = cfg.gen.max_evaluations;
  gen["population_size"] = cfg.gen.population_size;
  gen["branch_weight"] = cfg.gen.branch_weight;
  gen["kill_weight"] = cfg.gen.kill_weight;
  gen["float_tol"] = cfg.gen.float_tol;
  gen["max_seq_len"] = cfg.gen.max_seq_len;
  gen["stagnation_generations"] = cfg.gen.stagnation_generations;
  j["gen"] = std::move(gen);
  Json cache;
  cache["warmup_min"] = cfg.cache.warmup_min;
  cache["p_sample_cache"] = cfg.cache.p_sample_cache;
  cache["p_remove"] = cfg.cache.p_remove;
  cache["capacity"] = cfg.cache.capacity ? Json(*cfg.cache.capacity) : Json(nullptr);
  j["cache"] = std::move(cache);
  j["k"] = cfg.k;
  j["alpha"] = cfg.alpha;
  j["min_score"] = cfg.min_score;
  j["min_asserts"] = cfg.min_asserts;
  j["limits"] = LimitsToJson(cfg.limits);
  Json paths;
  paths["corpus_dir"] = cfg.paths.corpus_dir;
  paths["model_file"] = cfg.paths.model_file;
  paths["benchmark_dir"] = cfg.paths.benchmark_dir;
  j["paths"] = std::move(paths);
  j["jobs"] = cfg.jobs;
  return j;
}

Expected<RunConfig, std::string> ConfigFromJson(const Json& j) {
  RunConfig cfg;
  Reader r("");
  if (!r.Object(j, {"seeds", "gen", "cache", "k", "alpha", "min_score", "min_asserts", "limits",
                    "paths", "jobs"})) {
    return MakeUnexpected(r.error_);
  }
  r.Get(j, "k", cfg.k);
  r.Get(j, "alpha", cfg.alpha);
  r.Get(j, "min_score", cfg.min_score);
  r.Get(j, "min_asserts", cfg.min_asserts);
  r.Get(j, "jobs", cfg.jobs);
  if (j.contains("limits")) r.Limits(j.at("limits"), cfg.limits);
  if (j.contains("seeds")) {
    const Json& s = j.at("seeds");
    Reader sr("seeds.");
    if (sr.Object(s, {"testgen", "cache", "eval"})) {
      sr.Get(s, "testgen", cfg.seeds.testgen);
      sr.Get(s, "cache", cfg.seeds.cache);
      if (s.contains("eval") && !s.at("eval").is_null()) {
        std::uint64_t e = 0;
        if (sr.Get(s, "eval", e)) cfg.seeds.eval = e;
      }
    }
    if (!sr.error_.empty()) return MakeUnexpected(sr.error_);
  }
  if (j.contains("gen")) {
    const Json& g = j.at("gen");
    Reader gr("gen.");
    if (gr.Object(g, {"int_bound", "max_evaluations", "population_size", "branch_weight",
                      "kill_weight", "float_tol", "max_seq_len", "stagnation_generations"})) {
      gr.Get(g, "int_bound", cfg.gen.int_bound);
      gr.Get(g, "max_evaluations", cfg.gen.max_evaluations);
      gr.Get(g, "population_size", cfg.gen.population_size);
      gr.Get(g, "branch_weight", cfg.gen.branch_weight);
      gr.Get(g, "kill_weight", cfg.gen.kill_weight);
      gr.Get(g, "float_tol", cfg.gen.float_tol);
      gr.Get(g, "max_seq_len", cfg.gen.max_seq_len);
      gr.Get(g, "stagnation_generations", cfg.gen.stagnation_generations);
    }
    if (!gr.error_.empty()) return MakeUnexpected(gr.error_);
  }
  if (j.contains("cache")) {
    const Json& c = j.at("cache");
    Reader cr("cache.");
    if (cr.Object(c, {"warmup_min", "p_sample_cache", "p_remove", "capacity"})) {
      cr.Get(c, "warmup_min", cfg.cache.warmup_min);
      cr.Get(c, "p_sample_cache", cfg.cache.p_sample_cache);
      cr.Get(c, "p_remove", cfg.cache.p_remove);
      if (c.contains("capacity") && !c.at("capacity").is_null()) {
        std::size_t cap = 0;
        if (cr.Get(c, "capacity", cap)) cfg.cache.capacity = cap;
      }
    }
    if (!cr.error_.empty()) return MakeUnexpected(cr.error_);
  }
  if (j.contains("paths")) {
    const Json& p = j.at("paths");
    Reader pr("paths.");
    if (pr.Object(p, {"corpus_dir", "model_file", "benchmark_dir"})) {
      pr.Get(p, "corpus_dir", cfg.paths.corpus_dir);
      pr.Get(p, "model_file", cfg.paths.model_file);
      pr.Get(p, "benchmark_dir", cfg.paths.benchmark_dir);
    }
    if (!pr.error_.empty()) return MakeUnexpected(pr.error_);
  }
  if (!r.error_.empty()) return MakeUnexpected(r.error_);

  if (cfg.k < 1) return MakeUnexpected(std::string("k must be >= 1"));
  if (cfg.jobs < 1) return MakeUnexpected(std::string("jobs must be >= 1"));
  if (cfg.cache.warmup_min < 0) return MakeUnexpected(std::string("cache.warmup_min must be >= 0"));
  for (double p : {cfg.cache.p_sample_cache, cfg.cache.p_remove}) {
    if (!(p > 0.0 && p <= 1.0)) return MakeUnexpected(std::string("cache probabilities must lie in (0, 1]"));
  }
  cfg.gen.seed = cfg.seeds.testgen;
  cfg.gen.limits = cfg.limits;
  cfg.gen.jobs = cfg.jobs;
  cfg.cache.seed = cfg.seeds.cache;
  return cfg;
}

void ApplyEnvOverrides(RunConfig& cfg) {
  if (const char* v = std::getenv("XLT_CORPUS_DIR")) cfg.paths.corpus_dir = v;
  if (const char* v = std::getenv("XLT_MODEL_FILE")) cfg.paths.model_file = v;
  if (const char* v = std::getenv("XLT_BENCHMARK_DIR")) cfg.paths.benchmark_dir = v;
}

}  // namespace xlt
