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

#include "xlt/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "xlt/parallel.h"
#include "xlt/parse.h"
#include "xlt/testgen.h"
#include "xlt/testport.h"

namespace xlt {

std::string LanguagePairName(Dialect a, Dialect b) {
  if (static_cast<int>(b) < static_cast<int>(a)) std::swap(a, b);
  return std::string(DialectName(a)) + "-" + std::string(DialectName(b));
}

Expected<std::vector<CorpusFunction>, std::string> LoadCorpusFunctions(const std::string& text,
                                                                       Dialect dialect) {
  auto defs = ParseMany(dialect, text);
  if (!defs) return MakeUnexpected(defs.error().ToString());
  std::vector<CorpusFunction> out;
  for (const FunctionDef& def : *defs) {
    auto typed = Typecheck(def);
    if (!typed) return MakeUnexpected(def.name + ": " + typed.error().ToString());
    out.push_back({def.name, std::move(*typed), std::nullopt});
  }
  return out;
}

void AttachSelectedSuites(std::vector<CorpusFunction>& functions, const GenConfig& gen,
                          double min_score, int min_asserts) {
  GenConfig inner = gen;
  inner.jobs = 1;
  ParallelFor(functions.size(), gen.jobs, [&](size_t i) {
    CorpusFunction& f = functions[i];
    f.suite.reset();
    auto suite = EvolveSuite(f.fn, f.id, inner);
    if (suite && SelectSuite(*suite, min_score, min_asserts)) f.suite = std::move(*suite);
  });
}

Expected<ParallelPair, NoPass> FilterBeam(const Beam& beam, const TestSuite& ported,
                                          const ExecLimits& limits) {
  for (size_t rank = 0; rank < beam.candidates.size(); ++rank) {
    const Candidate& c = beam.candidates[rank];
    if (!c.rendering.fn) continue;
    auto typed = Typecheck(*c.rendering.fn);
    if (!typed || !PassesSuite(*typed, ported, limits)) continue;
    ParallelPair pair;
    pair.src_id = beam.source_id;
    pair.src_dialect = beam.source_dialect;
    pair.tgt_dialect = beam.target;
    pair.tgt_text = c.rendering.text;
    pair.suite_id = ported.id;
    pair.beam_rank = static_cast<int>(rank);
    pair.forward.src = beam.source_dialect;
    pair.forward.tgt = beam.target;
    for (const AmbiguitySite& s : beam.sites) pair.forward.kinds.push_back(s.kind);
    pair.forward.options = c.choices;
    return pair;
  }
  return MakeUnexpected(NoPass{static_cast<int>(beam.candidates.size())});
}

bool RecheckPair(const ParallelPair& pair, const TestSuite& suite, const ExecLimits& limits) {
  auto ported = PortSuite(suite, pair.tgt_dialect);
  if (!ported) return false;
  auto parsed = Parse(pair.tgt_dialect, pair.tgt_text);
  if (!parsed) return false;
  auto typed = Typecheck(*parsed);
  return typed && PassesSuite(*typed, *ported, limits);
}

std::vector<ParallelPair> PairsForFunction(const CorpusFunction& f, const AmbiguityModel& model,
                                           const PipelineConfig& cfg, int iteration) {
  std::vector<ParallelPair> out;
  if (!f.suite) return out;
  const std::string src_text = Print(f.fn.def);
  std::vector<TypedFunction> accepted;
  for (Dialect target : kDialects) {
    if (target == f.fn.dialect()) continue;
    auto ported = PortSuite(*f.suite, target);
    if (!ported) continue;
    auto beam = EnumerateCandidates(f.fn, f.id, target, model, cfg.k, cfg.alpha);
    if (!beam) continue;
    auto pair = FilterBeam(*beam, *ported, cfg.limits);
    if (!pair) continue;
    auto typed = Typecheck(*Parse(target, pair->tgt_text));
    pair->src_text = src_text;
    pair->iteration = iteration;
    pair->reverse = MatchChoices(*typed, f.fn.def);
    out.push_back(std::move(*pair));
    accepted.push_back(std::move(*typed));
  }
  if (accepted.size() == 2) {
    ParallelPair pair;
    pair.src_id = f.id;
    pair.src_dialect = accepted[0].dialect();
    pair.src_text = out[0].tgt_text;
    pair.tgt_dialect = accepted[1].dialect();
    pair.tgt_text = out[1].tgt_text;
    pair.suite_id = f.suite->id;
    pair.beam_rank = -1;
    pair.iteration = iteration;
    if (auto m = MatchChoices(accepted[0], accepted[1].def)) {
      pair.forward = std::move(*m);
    } else {
      pair.forward.src = pair.src_dialect;
      pair.forward.tgt = pair.tgt_dialect;
    }
    pair.reverse = MatchChoices(accepted[1], accepted[0].def);
    out.push_back(std::move(pair));
  }
  return out;
}

std::string ModelId(const AmbiguityModel& model) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(StableHash(model.ToJsonl())));
  return buf;
}

Corpus BuildCorpusOffline(const std::vector<CorpusFunction>& functions,
                          const AmbiguityModel& model, const PipelineConfig& cfg,
                          int iteration) {
  std::vector<std::vector<ParallelPair>> slots(functions.size());
  ParallelFor(functions.size(), cfg.jobs, [&](size_t i) {
    slots[i] = PairsForFunction(functions[i], model, cfg, iteration);
  });
  Corpus corpus;
  corpus.report.iteration = iteration;
  for (auto& slot : slots) {
    for (ParallelPair& p : slot) {
      ++corpus.report.pairs[LanguagePairName(p.src_dialect, p.tgt_dialect)];
      corpus.pairs.push_back(std::move(p));
    }
  }
  return corpus;
}

std::vector<DirectedChoices> TrainingBatch(const std::vector<ParallelPair>& pairs) {
  std::vector<DirectedChoices> batch;
  for (const ParallelPair& p : pairs) {
    batch.push_back(p.forward);
    if (p.reverse) batch.push_back(*p.reverse);
  }
  return batch;
}

AmbiguityModel TrainOnPair(const AmbiguityModel& model, const ParallelPair& pair) {
  return model.LearnUpdate(TrainingBatch({pair}));
}

OfflineResult TrainOffline(const std::vector<CorpusFunction>& functions,
                           const AmbiguityModel& model0, int iterations,
                           const PipelineConfig& cfg, const Validator& validate) {
  OfflineResult result;
  result.best = model0;
  result.baseline_ca1 = validate(model0);
  double best_ca1 = result.baseline_ca1;
  for (int it = 1; it <= iterations; ++it) {
    Corpus corpus = BuildCorpusOffline(functions, result.best, cfg, it);
    AmbiguityModel next = result.best.LearnUpdate(TrainingBatch(corpus.pairs));
    IterationReport& report = corpus.report;
    report.updates = static_cast<int>(corpus.pairs.size());
    report.validation_ca1 = validate(next);
    report.model_id = ModelId(next);
    report.accepted = report.validation_ca1 >= best_ca1;
    result.models.push_back(next);
    if (report.accepted) {
      best_ca1 = report.validation_ca1;
      result.best = std::move(next);
    }
    result.reports.push_back(report);
    result.corpora.push_back(std::move(corpus));
  }
  return result;
}

std::string_view CacheEventName(CacheEventKind kind) {
  switch (kind) {
    case CacheEventKind::kGenerate:
      return "generate";
    case CacheEventKind::kInsert:
      return "insert";
    case CacheEventKind::kSample:
      return "sample";
    case CacheEventKind::kRemove:
      return "remove";
    case CacheEventKind::kEvict:
      return "evict";
  }
  return "?";
}

PairSource CorpusPairSource(const std::vector<CorpusFunction>& functions,
                            const PipelineConfig& cfg, std::uint64_t seed) {
  std::vector<size_t> order;
  for (size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].suite) order.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto next = std::make_shared<size_t>(0);
  return [&functions, cfg, order, next](const AmbiguityModel& model, std::int64_t step) {
    if (order.empty()) return std::vector<ParallelPair>{};
    const CorpusFunction& f = functions[order[*next % order.size()]];
    ++*next;
    return PairsForFunction(f, model, cfg, static_cast<int>(step));
  };
}

OnlineResult TrainOnline(const AmbiguityModel& model0, const CacheConfig& cache_cfg,
                         const OnlineConfig& cfg, const PairSource& generate) {
  OnlineResult r;
  r.model = model0;
  std::mt19937_64 rng(cache_cfg.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<CacheEntry> cache;
  std::int64_t serial = 0;

  auto retire = [&](size_t index, CacheEventKind kind, std::int64_t step) {
    ++r.retired_histogram[cache[index].times_trained];
    std::int64_t s = cache[index].serial;
    cache.erase(cache.begin() + static_cast<std::ptrdiff_t>(index));
    ++r.removed;
    r.events.push_back({step, kind, s, cache.size()});
  };
  auto insert = [&](ParallelPair pair, std::int64_t step, int times_trained) {
    cache.push_back({std::move(pair), times_trained, step, serial});
    ++r.inserted;
    r.events.push_back({step, CacheEventKind::kInsert, serial, cache.size()});
    ++serial;
    if (cache_cfg.capacity && cache.size() > *cache_cfg.capacity) {
      retire(0, CacheEventKind::kEvict, step);
    }
  };
  auto sample = [&](std::int64_t step) {
    std::uniform_int_distribution<size_t> pick(0, cache.size() - 1);
    size_t index = pick(rng);
    r.model = TrainOnPair(r.model, cache[index].pair);
    ++r.updates;
    ++cache[index].times_trained;
    r.events.push_back({step, CacheEventKind::kSample, cache[index].serial, cache.size()});
    if (coin(rng) < cache_cfg.p_remove) retire(index, CacheEventKind::kRemove, step);
  };
  auto done = [&] { return cfg.max_updates && r.updates >= *cfg.max_updates; };

  for (const ParallelPair& p : cfg.initial_cache) insert(p, 0, 1);

  for (std::int64_t step = 0; step < cfg.steps && !done(); ++step) {
    r.steps = step + 1;
    bool use_cache = !cache.empty() &&
                     static_cast<std::int64_t>(cache.size()) >= cache_cfg.warmup_min &&
                     coin(rng) < cache_cfg.p_sample_cache;
    if (!use_cache) {
      r.events.push_back({step, CacheEventKind::kGenerate, -1, cache.size()});
      for (ParallelPair& p : generate(r.model, step)) {
        if (done()) break;
        ++r.pairs[LanguagePairName(p.src_dialect, p.tgt_dialect)];
        r.model = TrainOnPair(r.model, p);
        ++r.updates;
        insert(std::move(p), step, 1);
      }
      continue;
    }
    sample(step);
  }
  for (std::int64_t step = r.steps; cfg.drain && !cache.empty() && !done(); ++step) sample(step);
  for (const CacheEntry& e : cache) ++r.live_histogram[e.times_trained];
  return r;
}

}  // namespace xlt
