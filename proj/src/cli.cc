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

#include "xlt/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "xlt/config.h"
#include "xlt/eval.h"
#include "xlt/mutation.h"
#include "xlt/parallel.h"
#include "xlt/parse.h"
#include "xlt/pipeline.h"
#include "xlt/records.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"
#include "xlt/translate.h"

namespace xlt {
namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct DomainError {
  Json record;
};

struct UsageError {
  std::string flag;
  std::string message;
};

struct NamedFunction {
  std::string id;
  TypedFunction fn;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::ostream& out() { return out_; }

  // Prints a per-item domain error and marks the run as failed, without
  // stopping it.
  void Report(const Json& record) {
    err_ << record.dump() << "\n";
    status_ = kExitDomain;
  }

  int status() const { return status_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  int status_ = 0;
};

Json IoError(const std::string& message) { return Json{{"error", "IoError"}, {"message", message}}; }

std::string Slurp(const std::string& path) {
  auto text = ReadFile(path);
  if (!text) throw DomainError{IoError(text.error())};
  return *text;
}

void Store(const std::string& path, const std::string& contents) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  auto ok = WriteFile(path, contents);
  if (!ok) throw DomainError{IoError(ok.error())};
}

Dialect DialectFlag(const std::string& flag, const std::string& name) {
  auto d = DialectFromName(name);
  if (!d) throw UsageError{flag, "unknown dialect '" + name + "'"};
  return *d;
}

Dialect DialectForFile(const std::string& path, const std::string& flag_value) {
  if (!flag_value.empty()) return DialectFlag("--dialect", flag_value);
  std::string ext = std::filesystem::path(path).extension().string();
  if (ext.size() > 1) {
    std::string name = ext.substr(1);
    std::transform(name.begin(), name.end(), name.begin(), ::toupper);
    if (auto d = DialectFromName(name)) return *d;
  }
  throw UsageError{"--dialect", "cannot infer the dialect of " + path};
}

std::vector<NamedFunction> LoadFunctions(const std::string& path, Dialect dialect) {
  std::string text = Slurp(path);
  auto defs = ParseMany(dialect, text);
  if (!defs) {
    const ParseErrorReport& e = defs.error();
    throw DomainError{Json{{"error", "ParseError"},
                           {"path", path},
                           {"line", e.line},
                           {"col", e.col},
                           {"expected", e.expected},
                           {"found", e.found}}};
  }
  std::vector<NamedFunction> fns;
  std::set<std::string> seen;
  for (const FunctionDef& def : *defs) {
    auto typed = Typecheck(def);
    if (!typed) {
      const TypeErrorReport& e = typed.error();
      throw DomainError{Json{{"error", "TypeError"},
                             {"function", def.name},
                             {"path", e.path},
                             {"expected", e.expected},
                             {"found", e.found},
                             {"message", e.message}}};
    }
    if (!seen.insert(def.name).second) {
      throw DomainError{Json{{"error", "DuplicateFunction"}, {"function", def.name}}};
    }
    fns.push_back({def.name, std::move(*typed)});
  }
  return fns;
}

template <typename T, typename F>
std::vector<T> LoadRecords(const std::string& path, F&& from_json) {
  auto lines = ParseJsonLines(Slurp(path));
  if (!lines) throw DomainError{Json{{"error", "RecordError"}, {"path", path}, {"message", lines.error()}}};
  std::vector<T> items;
  for (size_t i = 0; i < lines->size(); ++i) {
    auto item = from_json((*lines)[i]);
    if (!item) {
      throw DomainError{Json{{"error", "RecordError"},
                             {"path", path},
                             {"line", i + 1},
                             {"message", item.error()}}};
    }
    items.push_back(std::move(*item));
  }
  return items;
}

std::vector<TestSuite> LoadSuites(const std::string& path) {
  return LoadRecords<TestSuite>(path, SuiteFromJson);
}

AmbiguityModel LoadModel(const std::string& arg) {
  if (arg == "uniform") return AmbiguityModel::Uniform();
  if (arg == "perfect") return AmbiguityModel::Perfect();
  auto m = AmbiguityModel::FromJsonl(Slurp(arg));
  if (!m) throw DomainError{Json{{"error", "ModelError"}, {"path", arg}, {"message", m.error()}}};
  return *m;
}

Benchmark LoadBench(const RunConfig& cfg) {
  std::string path = cfg.paths.benchmark_dir + "/entries.jsonl";
  auto b = LoadBenchmark(path);
  if (!b) throw DomainError{Json{{"error", "RecordError"}, {"path", path}, {"message", b.error()}}};
  return std::move(*b);
}

std::string Under(const RunConfig& cfg, const std::string& flag_value, const std::string& name) {
  return flag_value.empty() ? cfg.paths.corpus_dir + "/" + name : flag_value;
}

PipelineConfig PipelineFor(const RunConfig& cfg) {
  PipelineConfig p;
  p.k = cfg.k;
  p.alpha = cfg.alpha;
  p.limits = cfg.limits;
  p.jobs = cfg.jobs;
  return p;
}

EvalOptions EvalFor(const RunConfig& cfg, int n, int k) {
  EvalOptions o;
  o.n = n;
  o.k = k;
  o.alpha = cfg.alpha;
  o.limits = cfg.limits;
  o.jobs = cfg.jobs;
  o.tie_seed = cfg.seeds.eval;
  return o;
}

std::vector<CorpusFunction> AttachSuites(const std::vector<NamedFunction>& fns,
                                         const std::vector<TestSuite>& suites) {
  std::map<std::string, const TestSuite*> by_fn;
  for (const TestSuite& s : suites) by_fn.emplace(s.function_id, &s);
  std::vector<CorpusFunction> out;
  for (const NamedFunction& f : fns) {
    CorpusFunction cf{f.id, f.fn, std::nullopt};
    auto it = by_fn.find(f.id);
    if (it != by_fn.end() && it->second->dialect == f.fn.def.dialect) cf.suite = *it->second;
    out.push_back(std::move(cf));
  }
  return out;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string PairCounts(const std::map<std::string, int>& pairs) {
  std::string s;
  for (const auto& [name, n] : pairs) s += (s.empty() ? "" : " ") + name + "=" + std::to_string(n);
  return s;
}

// ---- report rendering

std::string Pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string RenderTable(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths(header.size());
  for (size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size() && c < widths.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (size_t c = 0; c < widths.size(); ++c) {
      std::string cell = c < cells.size() ? cells[c] : "";
      s += (c == 0 ? "" : (c == 1 ? " | " : "  ")) + Pad(cell, widths[c]);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string out = line(header);
  size_t total = 0;
  for (size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c == 0 ? 0 : (c == 1 ? 3 : 2));
  out += std::string(total, '-') + "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

std::vector<std::string> DirectedPairs() {
  std::vector<std::string> names;
  for (Dialect a : kDialects) {
    for (Dialect b : kDialects) {
      if (a != b) names.push_back(std::string(DialectName(a)) + "-" + std::string(DialectName(b)));
    }
  }
  return names;
}

std::string RenderReports(const std::vector<Json>& records) {
  // CA reports grouped by (label, metric); columns are the directed pairs.
  std::vector<std::string> order;
  std::map<std::string, std::map<std::string, double>> ca;
  std::vector<Json> iterations;
  std::vector<Json> online;
  for (const Json& r : records) {
    if (r.contains("pair") && r.contains("ratio")) {
      std::string row = r.value("model", std::string("model")) + " CA@" +
                        std::to_string(r.value("n", 1)) + " k=" + std::to_string(r.value("k", 10));
      if (!ca.count(row)) order.push_back(row);
      ca[row][r.at("pair").get<std::string>()] = r.at("ratio").get<double>();
    } else if (r.contains("iteration") && r.contains("validation_ca1")) {
      iterations.push_back(r);
    } else if (r.contains("retired_histogram")) {
      online.push_back(r);
    }
  }
  std::string out;
  if (!order.empty()) {
    std::vector<std::string> header{"model"};
    for (const std::string& p : DirectedPairs()) header.push_back(p);
    header.push_back("AVG");
    std::vector<std::vector<std::string>> rows;
    for (const std::string& row : order) {
      std::vector<std::string> cells{row};
      double sum = 0;
      int have = 0;
      for (const std::string& p : DirectedPairs()) {
        auto it = ca[row].find(p);
        if (it == ca[row].end()) {
          cells.push_back("-");
        } else {
          cells.push_back(Fixed(100.0 * it->second, 1));
          sum += it->second;
          ++have;
        }
      }
      cells.push_back(have == 6 ? Fixed(100.0 * sum / 6.0, 1) : "-");
      rows.push_back(std::move(cells));
    }
    out += "Computational accuracy (%)\n" + RenderTable(header, rows);
  }
  if (!iterations.empty()) {
    std::vector<std::string> names;
    for (const Json& r : iterations) {
      for (const auto& [name, n] : r.at("pairs").items()) {
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      }
    }
    std::sort(names.begin(), names.end());
    std::vector<std::string> header{"iteration"};
    for (const std::string& n : names) header.push_back(n);
    for (const char* h : {"updates", "val CA@1", "model", "accepted"}) header.push_back(h);
    std::vector<std::vector<std::string>> rows;
    for (const Json& r : iterations) {
      std::vector<std::string> cells{std::to_string(r.at("iteration").get<int>())};
      for (const std::string& n : names) {
        cells.push_back(r.at("pairs").contains(n) ? std::to_string(r.at("pairs").at(n).get<int>()) : "0");
      }
      cells.push_back(std::to_string(r.value("updates", 0)));
      cells.push_back(Fixed(100.0 * r.at("validation_ca1").get<double>(), 1));
      cells.push_back(r.value("model_id", std::string()));
      cells.push_back(r.value("accepted", true) ? "yes" : "no");
      rows.push_back(std::move(cells));
    }
    if (!out.empty()) out += "\n";
    out += "Offline self-training\n" + RenderTable(header, rows);
  }
  for (const Json& r : online) {
    if (!out.empty()) out += "\n";
    std::vector<std::vector<std::string>> rows;
    for (const char* key : {"steps", "updates", "inserted", "removed"}) {
      rows.push_back({key, std::to_string(r.value(key, 0))});
    }
    if (r.contains("mean_times_trained_retired")) {
      rows.push_back({"mean times trained (retired)", Fixed(r.at("mean_times_trained_retired").get<double>(), 3)});
    }
    if (r.contains("validation_ca1")) {
      rows.push_back({"val CA@1", Fixed(100.0 * r.at("validation_ca1").get<double>(), 1)});
    }
    out += "Online self-training\n" + RenderTable({"quantity", "value"}, rows);
  }
  return out;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unit-test-filtered self-training for DJ, DP and DC translation", "xlt"};
  app.require_subcommand(0, 1);
  std::string config_path;
  int jobs = 0;
  bool print_config = false;
  app.add_option("--config", config_path, "run configuration (JSON)");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  // Flags shared by several subcommands.
  std::string in, out_path, dialect, suites_path, model_arg = "uniform", function, target;
  std::string report_path, stats_path, events_path, init_cache, pair, split = "all", label;
  std::string reorder_suites;
  int limit = 0, iteration = 1, iterations = 1, n = 1, eval_k = 10;
  std::int64_t steps = 0, max_updates = 0;
  std::optional<int> beam_k;
  bool include_divergent = false;
  std::vector<std::string> inputs;

  const std::string corpus_default = std::string(XLT_SOURCE_DIR) + "/data/corpus.dj";

  auto* gen = app.add_subcommand("gen-tests", "generate a unit-test suite per function");
  gen->add_option("--in", in, "function file")->capture_default_str();
  gen->add_option("--dialect", dialect, "dialect of --in (default: from extension)");
  gen->add_option("--out", out_path, "suite records");
  gen->add_option("--limit", limit, "only the first N functions")->check(CLI::NonNegativeNumber);

  auto* sel = app.add_subcommand("select-suites", "keep suites that pass the quality gate");
  sel->add_option("--in", in, "suite records");
  sel->add_option("--out", out_path, "selected suite records");

  auto* port = app.add_subcommand("port-tests", "port suites to another dialect");
  port->add_option("--in", in, "suite records");
  port->add_option("--target", target, "target dialect")->required();
  port->add_option("--out", out_path, "ported suite records");

  auto* mut = app.add_subcommand("mutants", "list mutants and their kill status");
  mut->add_option("--in", in, "function file");
  mut->add_option("--dialect", dialect, "dialect of --in");
  mut->add_option("--function", function, "only this function");
  mut->add_option("--suites", suites_path, "suite records used to score the mutants");
  mut->add_option("--out", out_path, "mutant records (default: stdout)");

  auto* tr = app.add_subcommand("translate", "beam of candidate translations");
  tr->add_option("--in", in, "function file");
  tr->add_option("--dialect", dialect, "dialect of --in");
  tr->add_option("--function", function, "function to translate");
  tr->add_option("--target", target, "target dialect")->required();
  tr->add_option("--model", model_arg, "uniform, perfect or a model file");
  tr->add_option("--k", beam_k, "beam size")->check(CLI::PositiveNumber);
  tr->add_option("--out", out_path, "candidate records (default: stdout)");

  auto* bc = app.add_subcommand("build-corpus", "translate, filter and collect parallel pairs");
  bc->add_option("--in", in, "function file");
  bc->add_option("--dialect", dialect, "dialect of --in");
  bc->add_option("--suites", suites_path, "selected suite records");
  bc->add_option("--model", model_arg, "uniform, perfect or a model file");
  bc->add_option("--iteration", iteration, "iteration tag")->check(CLI::NonNegativeNumber);
  bc->add_option("--out", out_path, "pair records");
  bc->add_option("--report", report_path, "iteration report");

  auto* off = app.add_subcommand("train-offline", "offline self-training");
  off->add_option("--in", in, "function file");
  off->add_option("--dialect", dialect, "dialect of --in");
  off->add_option("--suites", suites_path, "selected suite records");
  off->add_option("--model", model_arg, "initial model");
  off->add_option("--iterations", iterations, "iterations")->check(CLI::PositiveNumber);
  off->add_option("--eval-k", eval_k, "beam size for validation")->check(CLI::PositiveNumber);
  off->add_option("--out-model", out_path, "trained model file");
  off->add_option("--reports", report_path, "iteration reports");

  auto* on = app.add_subcommand("train-online", "online self-training with a cache");
  on->add_option("--in", in, "function file");
  on->add_option("--dialect", dialect, "dialect of --in");
  on->add_option("--suites", suites_path, "selected suite records");
  on->add_option("--model", model_arg, "initial model");
  on->add_option("--steps", steps, "training steps")->required()->check(CLI::PositiveNumber);
  on->add_option("--max-updates", max_updates, "stop after this many learn updates")
      ->check(CLI::PositiveNumber);
  on->add_option("--init-cache", init_cache, "pair records used to fill the cache first");
  on->add_option("--eval-k", eval_k, "beam size for validation")->check(CLI::PositiveNumber);
  on->add_option("--out-model", out_path, "trained model file");
  on->add_option("--stats", stats_path, "cache statistics");
  on->add_option("--events", events_path, "cache event log");

  auto* ev = app.add_subcommand("eval", "computational accuracy on the benchmark");
  ev->add_option("--pair", pair, "directed pair such as DJ-DP, or all")->required();
  ev->add_option("--n", n, "candidates that may pass")->check(CLI::PositiveNumber);
  ev->add_option("--k", eval_k, "beam size")->check(CLI::PositiveNumber);
  ev->add_option("--model", model_arg, "uniform, perfect or a model file");
  ev->add_option("--split", split, "all, validation or test")
      ->check(CLI::IsMember({"all", "validation", "test"}));
  ev->add_flag("--include-divergent", include_divergent, "also score overflow-divergent entries");
  ev->add_option("--reorder-suites", reorder_suites, "rerank the beam with these suites first");
  ev->add_option("--label", label, "row label in reports (default: --model)");
  ev->add_option("--out", out_path, "CA report records");

  auto* rep = app.add_subcommand("report", "render reports as plain-text tables");
  rep->add_option("inputs", inputs, "report files")->required();
  rep->add_option("--out", out_path, "write the table here as well");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!print_config && app.get_subcommands().empty()) {
    err << "usage error: a subcommand is required\n";
    return kExitUsage;
  }

  Session s(out, err);
  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      auto text = ReadFile(config_path);
      if (!text) throw UsageError{"--config", text.error()};
      Json j;
      try {
        j = Json::parse(*text);
      } catch (const std::exception& e) {
        throw UsageError{"--config", e.what()};
      }
      auto parsed = ConfigFromJson(j);
      if (!parsed) throw UsageError{"--config", parsed.error()};
      cfg = *parsed;
    }
    ApplyEnvOverrides(cfg);
    if (cfg.paths.benchmark_dir.empty()) cfg.paths.benchmark_dir = DefaultBenchmarkDir();
    if (jobs > 0) cfg.jobs = jobs;
    cfg.gen.jobs = cfg.jobs;
    if (print_config) {
      out << ConfigToJson(cfg).dump(2) << "\n";
      return 0;
    }
    if (in.empty()) in = corpus_default;
    auto src_dialect = [&] { return DialectForFile(in, dialect); };

    if (gen->parsed()) {
      auto fns = LoadFunctions(in, src_dialect());
      if (limit > 0 && static_cast<size_t>(limit) < fns.size()) fns.resize(static_cast<size_t>(limit));
      GenConfig gc = cfg.gen;
      gc.jobs = 1;
      std::vector<std::optional<Expected<TestSuite, NoViableInputs>>> results(fns.size());
      ParallelFor(fns.size(), cfg.jobs, [&](size_t i) { results[i] = EvolveSuite(fns[i].fn, fns[i].id, gc); });
      std::string text;
      int made = 0;
      for (size_t i = 0; i < fns.size(); ++i) {
        if (*results[i]) {
          text += SuiteToJson(**results[i]).dump() + "\n";
          ++made;
        } else {
          s.Report(Json{{"error", "NoViableInputs"},
                        {"function", fns[i].id},
                        {"attempts", results[i]->error().attempts}});
        }
      }
      std::string path = Under(cfg, out_path, "suites.jsonl");
      Store(path, text);
      out << "gen-tests: " << made << " of " << fns.size() << " functions -> " << path << "\n";
    } else if (sel->parsed()) {
      std::string src = in == corpus_default ? cfg.paths.corpus_dir + "/suites.jsonl" : in;
      auto suites = LoadSuites(src);
      std::string text;
      int kept = 0;
      for (const TestSuite& suite : suites) {
        if (!SelectSuite(suite, cfg.min_score, cfg.min_asserts)) continue;
        text += SuiteToJson(suite).dump() + "\n";
        ++kept;
      }
      std::string path = Under(cfg, out_path, "selected.jsonl");
      Store(path, text);
      out << "select-suites: " << kept << " of " << suites.size() << " -> " << path << "\n";
    } else if (port->parsed()) {
      Dialect tgt = DialectFlag("--target", target);
      std::string src = in == corpus_default ? cfg.paths.corpus_dir + "/selected.jsonl" : in;
      auto suites = LoadSuites(src);
      std::string text;
      int ported = 0;
      for (const TestSuite& suite : suites) {
        auto p = PortSuite(suite, tgt);
        if (!p) {
          s.Report(Json{{"error", "Unsupported"}, {"suite", suite.id}, {"type", p.error().type}});
          continue;
        }
        text += SuiteToJson(*p).dump() + "\n";
        ++ported;
      }
      std::string path = Under(cfg, out_path, "ported_" + std::string(DialectName(tgt)) + ".jsonl");
      Store(path, text);
      out << "port-tests: " << ported << " of " << suites.size() << " -> " << path << "\n";
    } else if (mut->parsed()) {
      auto fns = LoadFunctions(in, src_dialect());
      std::map<std::string, TestSuite> suites;
      if (!suites_path.empty()) {
        for (TestSuite& suite : LoadSuites(suites_path)) suites.emplace(suite.function_id, std::move(suite));
      }
      std::string text;
      bool found = function.empty();
      for (const NamedFunction& f : fns) {
        if (!function.empty() && f.id != function) continue;
        found = true;
        std::vector<Mutant> mutants = GenerateMutants(f.fn);
        std::optional<MutationReport> report;
        auto it = suites.find(f.id);
        if (it != suites.end() && !mutants.empty()) {
          auto r = MutationScore(it->second.cases, mutants, cfg.limits, cfg.jobs);
          if (r) report = *r;
        }
        for (size_t i = 0; i < mutants.size(); ++i) {
          const Mutant& m = mutants[i];
          Json j;
          j["function"] = f.id;
          j["index"] = m.index;
          j["operator"] = std::string(MutationOperatorName(m.op));
          j["site"] = m.site;
          j["description"] = m.description;
          if (report) {
            j["killed"] = report->verdicts[i].killed;
            j["killing_case"] = report->verdicts[i].killing_case;
          }
          j["source"] = Print(m.mutated.def);
          text += j.dump() + "\n";
        }
        Json summary;
        summary["function"] = f.id;
        summary["total_mutants"] = static_cast<int>(mutants.size());
        if (report) {
          summary["killed"] = report->killed;
          summary["score"] = report->score;
        }
        text += summary.dump() + "\n";
      }
      if (!found) throw UsageError{"--function", "no function named '" + function + "'"};
      if (out_path.empty()) {
        out << text;
      } else {
        Store(out_path, text);
      }
    } else if (tr->parsed()) {
      Dialect tgt = DialectFlag("--target", target);
      auto fns = LoadFunctions(in, src_dialect());
      const NamedFunction* chosen = nullptr;
      for (const NamedFunction& f : fns) {
        if (function.empty() ? fns.size() == 1 : f.id == function) chosen = &f;
      }
      if (!chosen) {
        throw UsageError{"--function", function.empty() ? "required when the file holds several functions"
                                                        : "no function named '" + function + "'"};
      }
      AmbiguityModel model = LoadModel(model_arg);
      auto beam = EnumerateCandidates(chosen->fn, chosen->id, tgt, model, beam_k.value_or(cfg.k), cfg.alpha);
      if (!beam) {
        throw DomainError{Json{{"error", "UnsupportedConstruct"},
                               {"function", chosen->id},
                               {"message", beam.error().message}}};
      }
      std::string text;
      for (size_t r = 0; r < beam->candidates.size(); ++r) {
        const Candidate& c = beam->candidates[r];
        Json j;
        j["function"] = chosen->id;
        j["target"] = std::string(DialectName(tgt));
        j["rank"] = static_cast<int>(r + 1);
        j["score"] = c.score;
        j["raw_logprob"] = c.raw_logprob;
        j["token_length"] = c.token_length;
        j["choices"] = c.choices;
        j["text"] = c.rendering.text;
        text += j.dump() + "\n";
      }
      if (out_path.empty()) {
        out << text;
      } else {
        Store(out_path, text);
      }
    } else if (bc->parsed()) {
      auto fns = LoadFunctions(in, src_dialect());
      auto suites = LoadSuites(suites_path.empty() ? cfg.paths.corpus_dir + "/selected.jsonl" : suites_path);
      auto corpus_fns = AttachSuites(fns, suites);
      AmbiguityModel model = LoadModel(model_arg);
      Corpus corpus = BuildCorpusOffline(corpus_fns, model, PipelineFor(cfg), iteration);
      corpus.report.updates = static_cast<int>(corpus.pairs.size());
      corpus.report.model_id = ModelId(model);
      std::string path = Under(cfg, out_path, "corpus.jsonl");
      Store(path, ToJsonLines(corpus.pairs, PairToJson));
      Store(Under(cfg, report_path, "corpus_report.jsonl"), IterationReportToJson(corpus.report).dump() + "\n");
      out << "build-corpus: " << corpus.pairs.size() << " pairs (" << PairCounts(corpus.report.pairs)
          << ") -> " << path << "\n";
    } else if (off->parsed()) {
      auto fns = LoadFunctions(in, src_dialect());
      auto suites = LoadSuites(suites_path.empty() ? cfg.paths.corpus_dir + "/selected.jsonl" : suites_path);
      auto corpus_fns = AttachSuites(fns, suites);
      AmbiguityModel model0 = LoadModel(model_arg);
      Benchmark bench = LoadBench(cfg);
      EvalOptions vopts = EvalFor(cfg, 1, eval_k);
      vopts.filter = SplitFilter("validation");
      auto validate = [&](const AmbiguityModel& m) { return MeanCa1(m, bench, vopts); };
      OfflineResult res = TrainOffline(corpus_fns, model0, iterations, PipelineFor(cfg), validate);

      std::vector<IterationReport> reports;
      IterationReport base;
      base.iteration = 0;
      base.validation_ca1 = res.baseline_ca1;
      base.model_id = ModelId(model0);
      reports.push_back(base);
      out << "iteration 0: val CA@1=" << Fixed(res.baseline_ca1, 3) << "\n";
      for (size_t i = 0; i < res.reports.size(); ++i) {
        const IterationReport& r = res.reports[i];
        reports.push_back(r);
        Store(cfg.paths.corpus_dir + "/corpus_iter" + std::to_string(r.iteration) + ".jsonl",
              ToJsonLines(res.corpora[i].pairs, PairToJson));
        out << "iteration " << r.iteration << ": val CA@1=" << Fixed(r.validation_ca1, 3)
            << " updates=" << r.updates << " " << PairCounts(r.pairs)
            << (r.accepted ? "" : " (rejected)") << "\n";
      }
      std::string model_path = out_path.empty() ? cfg.paths.model_file : out_path;
      Store(model_path, res.best.ToJsonl());
      Store(Under(cfg, report_path, "offline_reports.jsonl"), ToJsonLines(reports, IterationReportToJson));
      out << "model " << ModelId(res.best) << " -> " << model_path << "\n";
    } else if (on->parsed()) {
      auto fns = LoadFunctions(in, src_dialect());
      auto suites = LoadSuites(suites_path.empty() ? cfg.paths.corpus_dir + "/selected.jsonl" : suites_path);
      auto corpus_fns = AttachSuites(fns, suites);
      AmbiguityModel model0 = LoadModel(model_arg);
      OnlineConfig ocfg;
      ocfg.steps = steps;
      if (max_updates > 0) ocfg.max_updates = max_updates;
      if (!init_cache.empty()) ocfg.initial_cache = LoadRecords<ParallelPair>(init_cache, PairFromJson);
      PipelineConfig pcfg = PipelineFor(cfg);
      OnlineResult res = TrainOnline(model0, cfg.cache, ocfg, CorpusPairSource(corpus_fns, pcfg, cfg.seeds.cache));

      Benchmark bench = LoadBench(cfg);
      EvalOptions vopts = EvalFor(cfg, 1, eval_k);
      vopts.filter = SplitFilter("validation");
      double val = MeanCa1(res.model, bench, vopts);

      Json stats;
      stats["steps"] = res.steps;
      stats["updates"] = res.updates;
      stats["inserted"] = res.inserted;
      stats["removed"] = res.removed;
      Json pairs = Json::object();
      for (const auto& [k, v] : res.pairs) pairs[k] = v;
      stats["pairs"] = std::move(pairs);
      auto hist = [](const std::map<int, std::int64_t>& h) {
        Json j = Json::object();
        for (const auto& [times, count] : h) j[std::to_string(times)] = count;
        return j;
      };
      stats["retired_histogram"] = hist(res.retired_histogram);
      stats["live_histogram"] = hist(res.live_histogram);
      std::int64_t retired = 0, trained = 0;
      for (const auto& [times, count] : res.retired_histogram) {
        retired += count;
        trained += times * count;
      }
      if (retired > 0) stats["mean_times_trained_retired"] = static_cast<double>(trained) / retired;
      stats["validation_ca1"] = val;
      stats["model_id"] = ModelId(res.model);

      std::string model_path = out_path.empty() ? cfg.paths.model_file : out_path;
      Store(model_path, res.model.ToJsonl());
      Store(Under(cfg, stats_path, "online_stats.json"), stats.dump() + "\n");
      if (!events_path.empty()) {
        std::string text;
        for (const CacheEvent& e : res.events) {
          text += Json{{"step", e.step},
                       {"event", std::string(CacheEventName(e.kind))},
                       {"serial", e.serial},
                       {"cache_size", e.cache_size}}
                      .dump() +
                  "\n";
        }
        Store(events_path, text);
      }
      out << "train-online: steps=" << res.steps << " updates=" << res.updates << " val CA@1=" << Fixed(val, 3)
          << " model " << ModelId(res.model) << " -> " << model_path << "\n";
    } else if (ev->parsed()) {
      std::vector<std::pair<Dialect, Dialect>> directions;
      if (pair == "all") {
        for (Dialect a : kDialects) {
          for (Dialect b : kDialects) {
            if (a != b) directions.emplace_back(a, b);
          }
        }
      } else {
        auto dash = pair.find('-');
        if (dash == std::string::npos) throw UsageError{"--pair", "expected SRC-TGT, got '" + pair + "'"};
        Dialect a = DialectFlag("--pair", pair.substr(0, dash));
        Dialect b = DialectFlag("--pair", pair.substr(dash + 1));
        if (a == b) throw UsageError{"--pair", "source and target must differ"};
        directions.emplace_back(a, b);
      }
      std::string arg = model_arg;
      AmbiguityModel model = LoadModel(arg);
      Benchmark bench = LoadBench(cfg);
      EvalOptions opts = EvalFor(cfg, n, eval_k);
      std::string which = split == "all" ? "" : split;
      if (include_divergent) {
        opts.filter = [which](const BenchmarkEntry& e) { return which.empty() || e.split == which; };
      } else {
        opts.filter = SplitFilter(which);
      }
      std::map<std::string, TestSuite> reorder;
      if (!reorder_suites.empty()) {
        for (TestSuite& suite : LoadSuites(reorder_suites)) reorder.emplace(suite.function_id, std::move(suite));
      }
      std::string text;
      double sum = 0.0;
      for (const auto& [a, b] : directions) {
        CAReport r = reorder_suites.empty() ? CaAtN(model, bench, a, b, opts)
                                            : BeamReorderEval(model, bench, a, b, reorder, opts);
        Json j;
        j["model"] = label.empty() ? arg : label;
        j["split"] = split;
        j["subset"] = include_divergent ? "all" : "overflow-free";
        if (!reorder_suites.empty()) j["reordered"] = true;
        Json body = CAReportToJson(r);
        for (const auto& [key, value] : body.items()) j[key] = value;
        text += j.dump() + "\n";
        out << CAReportSummary(r) << "\n";
        sum += r.ratio;
      }
      if (directions.size() > 1) out << "mean CA@" << n << "=" << Fixed(sum / directions.size(), 3) << "\n";
      Store(Under(cfg, out_path, "eval.jsonl"), text);
    } else if (rep->parsed()) {
      std::vector<Json> records;
      for (const std::string& path : inputs) {
        auto lines = ParseJsonLines(Slurp(path));
        if (!lines) throw DomainError{Json{{"error", "RecordError"}, {"path", path}, {"message", lines.error()}}};
        for (Json& j : *lines) records.push_back(std::move(j));
      }
      std::string table = RenderReports(records);
      if (table.empty()) throw DomainError{Json{{"error", "RecordError"}, {"message", "no reports found"}}};
      out << table;
      if (!out_path.empty()) Store(out_path, table);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.flag << ": " << e.message << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << e.record.dump() << "\n";
    return kExitDomain;
  }
  return s.status();
}

}  // namespace xlt
