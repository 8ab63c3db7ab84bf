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

#include "xlt/testgen.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xlt/parallel.h"

namespace xlt {

std::uint64_t StableHash(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Expected<TestCase, Rejected> SynthesizeTest(const TypedFunction& fn, const std::vector<Value>& args,
                                            const ExecLimits& limits, double float_tol) {
  ExecOutcome outcome = Execute(fn, args, limits);
  if (outcome.status != ExecStatus::kOk) return MakeUnexpected(Rejected{outcome.status});
  TestCase tc;
  for (const Value& a : args) tc.args.push_back(a.DeepCopy());
  tc.expected = std::move(outcome);
  tc.expected.steps = 0;
  tc.float_tol = float_tol;
  return tc;
}

bool SelectSuite(const TestSuite& suite, double min_score, int min_asserts) {
  return suite.report.total_mutants > 0 && suite.report.score > min_score &&
         suite.assert_count >= min_asserts;
}

namespace {

struct Constants {
  std::vector<std::int64_t> ints;
  std::vector<double> floats;
  std::vector<std::string> strs;
};

void CollectConstants(const Expr& e, std::int64_t bound, Constants& out) {
  if (e.kind == ExprKind::kIntLit && boost::multiprecision::abs(e.int_value) <= bound) {
    auto v = static_cast<std::int64_t>(e.int_value);
    for (std::int64_t c : {v - 1, v, v + 1}) {
      if (std::llabs(c) <= bound) out.ints.push_back(c);
    }
  }
  if (e.kind == ExprKind::kFloatLit && std::fabs(e.float_value) <= static_cast<double>(bound)) {
    out.floats.push_back(e.float_value);
  }
  if (e.kind == ExprKind::kStrLit) out.strs.push_back(e.text);
  for (const Expr& k : e.kids) CollectConstants(k, bound, out);
}

void CollectConstants(const std::vector<Stmt>& block, std::int64_t bound, Constants& out) {
  for (const Stmt& s : block) {
    for (const Expr& e : s.exprs) CollectConstants(e, bound, out);
    CollectConstants(s.body, bound, out);
    CollectConstants(s.orelse, bound, out);
  }
}

class Sampler {
 public:
  Sampler(const GenConfig& cfg, Constants constants, std::mt19937_64& rng)
      : cfg_(cfg), constants_(std::move(constants)), rng_(rng) {
    std::sort(constants_.ints.begin(), constants_.ints.end());
    constants_.ints.erase(std::unique(constants_.ints.begin(), constants_.ints.end()),
                          constants_.ints.end());
  }

  double Unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  std::int64_t Range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(Range(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  std::int64_t Clamp(std::int64_t v) const { return std::clamp(v, -cfg_.int_bound, cfg_.int_bound); }
  double ClampF(double v) const {
    auto b = static_cast<double>(cfg_.int_bound);
    return std::clamp(v, -b, b);
  }

  std::int64_t RandomInt() {
    double r = Unit();
    if (r < 0.35) return Range(-10, 10);
    if (r < 0.55 && !constants_.ints.empty()) return Pick(constants_.ints);
    if (r < 0.7) return Range(-1000, 1000);
    return Range(-cfg_.int_bound, cfg_.int_bound);
  }

  double RandomFloat() {
    double r = Unit();
    if (r < 0.3) return static_cast<double>(Range(-10, 10));
    if (r < 0.45 && !constants_.floats.empty()) return Pick(constants_.floats);
    if (r < 0.55 && !constants_.ints.empty()) return static_cast<double>(Pick(constants_.ints));
    auto b = static_cast<double>(cfg_.int_bound);
    double x = std::uniform_real_distribution<double>(-b, b)(rng_);
    if (Unit() < 0.5) x /= 100.0;
    return ClampF(std::round(x * 10.0) / 10.0);
  }

  std::string RandomStr() {
    if (!constants_.strs.empty() && Unit() < 0.3) return Pick(constants_.strs);
    static constexpr std::string_view kAlphabet = "abcxyz01 ";
    std::string s;
    auto n = Range(0, 5);
    for (std::int64_t i = 0; i < n; ++i) {
      s += kAlphabet[static_cast<size_t>(Range(0, kAlphabet.size() - 1))];
    }
    return s;
  }

  Value Scalar(TypeKind k) {
    if (IsIntKind(k)) return Value::IntOf(k, BigInt(RandomInt()));
    switch (k) {
      case TypeKind::kF64:
        return Value::F64(RandomFloat());
      case TypeKind::kBool:
        return Value::Bool(Unit() < 0.5);
      default:
        return Value::Str(RandomStr());
    }
  }

  Value Random(const Type& t) {
    if (!t.IsSeq()) return Scalar(t.kind);
    Value::Seq items;
    auto n = Range(0, cfg_.max_seq_len);
    for (std::int64_t i = 0; i < n; ++i) items.push_back(Scalar(t.elem));
    return t.kind == TypeKind::kArr ? Value::Arr(t.elem, std::move(items))
                                    : Value::Lst(t.elem, std::move(items));
  }

  Value PerturbScalar(const Value& v) {
    if (v.IsInt()) {
      auto x = static_cast<std::int64_t>(v.ToBigInt());
      std::int64_t y;
      switch (Range(0, 5)) {
        case 0:
          y = x + Range(1, 3);
          break;
        case 1:
          y = x - Range(1, 3);
          break;
        case 2:
          y = x * 2;
          break;
        case 3:
          y = x / 2;
          break;
        case 4:
          y = -x;
          break;
        default:
          y = RandomInt();
      }
      return Value::IntOf(v.tag(), BigInt(Clamp(y)));
    }
    switch (v.tag()) {
      case TypeKind::kF64: {
        double x = v.AsF64();
        switch (Range(0, 5)) {
          case 0:
            return Value::F64(ClampF(x + 1));
          case 1:
            return Value::F64(ClampF(x - 1));
          case 2:
            return Value::F64(ClampF(x * 2));
          case 3:
            return Value::F64(std::round(x * 5.0) / 10.0);
          case 4:
            return Value::F64(-x);
          default:
            return Value::F64(RandomFloat());
        }
      }
      case TypeKind::kBool:
        return Value::Bool(!v.AsBool());
      default:
        return Value::Str(RandomStr());
    }
  }

  Value Perturb(const Value& v, const Type& t) {
    if (!t.IsSeq()) return Unit() < 0.2 ? Random(t) : PerturbScalar(v);
    Value out = v.DeepCopy();
    auto& items = out.mutable_items();
    double r = Unit();
    if (r < 0.15) return Random(t);
    if (r < 0.35 && static_cast<int>(items.size()) < cfg_.max_seq_len) {
      auto at = Range(0, static_cast<std::int64_t>(items.size()));
      items.insert(items.begin() + at, Scalar(t.elem));
    } else if (r < 0.5 && !items.empty()) {
      auto at = Range(0, static_cast<std::int64_t>(items.size()) - 1);
      items.erase(items.begin() + at);
    } else if (!items.empty()) {
      auto at = static_cast<size_t>(Range(0, static_cast<std::int64_t>(items.size()) - 1));
      items[at] = PerturbScalar(items[at]);
    } else {
      items.push_back(Scalar(t.elem));
    }
    return out;
  }

  const Constants& constants() const { return constants_; }

 private:
  const GenConfig& cfg_;
  Constants constants_;
  std::mt19937_64& rng_;
};

struct Individual {
  std::vector<Value> args;
  ExecOutcome outcome;
  std::vector<std::uint8_t> goals;
  double fitness = 0.0;
  int order = 0;  // evaluation index, the tie-breaker everywhere
};

std::string ArgsKey(const std::vector<Value>& args) {
  std::string key;
  for (const Value& v : args) {
    key += TypeKindName(v.tag());
    key += ':';
    key += v.Format();
    key += '|';
  }
  return key;
}

class Search {
 public:
  Search(const TypedFunction& fn, const std::string& function_id,
         const std::vector<Mutant>& mutants, const GenConfig& cfg)
      : fn_(fn), id_(function_id), mutants_(mutants), cfg_(cfg),
        rng_(cfg.seed ^ StableHash(function_id)), sampler_(cfg, Gather(fn, cfg), rng_) {
    for (int d : fn.decision_ids) {
      branch_index_[d] = static_cast<int>(branch_goals_);
      branch_goals_ += 2;
    }
    num_goals_ = branch_goals_ + mutants.size();
    covered_.assign(num_goals_, 0);
  }

  Expected<TestSuite, NoViableInputs> Run() {
    std::vector<Individual> population = Initial();
    while (evaluations_ < cfg_.max_evaluations && stagnation_ < cfg_.stagnation_generations &&
           !AllCovered() && !population.empty()) {
      population = NextGeneration(population);
    }
    if (archive_.empty() && first_viable_.empty()) {
      return MakeUnexpected(NoViableInputs{evaluations_});
    }
    return Assemble();
  }

 private:
  static Constants Gather(const TypedFunction& fn, const GenConfig& cfg) {
    Constants c;
    CollectConstants(fn.def.body, cfg.int_bound, c);
    for (std::int64_t v : {0, 1, -1, 2}) c.ints.push_back(v);
    return c;
  }

  bool AllCovered() const {
    return std::all_of(covered_.begin(), covered_.end(), [](std::uint8_t b) { return b != 0; });
  }

  std::vector<Value> RandomTuple() {
    std::vector<Value> args;
    for (const Param& p : fn_.def.params) args.push_back(sampler_.Random(p.type));
    return args;
  }

  std::vector<Individual> Initial() {
    std::vector<std::vector<Value>> inputs;
    // A few tuples built from the function's own constants.
    const auto& ints = sampler_.constants().ints;
    for (size_t i = 0; i < ints.size() && static_cast<int>(inputs.size()) < cfg_.population_size / 4;
         ++i) {
      std::vector<Value> args = RandomTuple();
      for (size_t p = 0; p < args.size(); ++p) {
        if (args[p].IsInt()) args[p] = Value::IntOf(args[p].tag(), BigInt(ints[(i + p) % ints.size()]));
      }
      inputs.push_back(std::move(args));
    }
    while (static_cast<int>(inputs.size()) < cfg_.population_size) inputs.push_back(RandomTuple());
    return EvaluateAll(std::move(inputs));
  }

  std::vector<Individual> EvaluateAll(std::vector<std::vector<Value>> inputs) {
    // Drop duplicates of already-evaluated tuples before spending budget.
    std::vector<std::vector<Value>> fresh;
    std::vector<std::string> keys;
    for (auto& args : inputs) {
      std::string key = ArgsKey(args);
      if (seen_.count(key) != 0) continue;
      if (evaluations_ + static_cast<int>(fresh.size()) >= cfg_.max_evaluations) break;
      seen_.insert(key);
      keys.push_back(key);
      fresh.push_back(std::move(args));
    }
    std::vector<std::optional<Individual>> results(fresh.size());
    ParallelFor(fresh.size(), cfg_.jobs, [&](size_t i) { results[i] = Evaluate(fresh[i]); });
    std::vector<Individual> out;
    for (auto& r : results) {
      int order = evaluations_++;
      if (!r) continue;
      r->order = order;
      if (first_viable_.empty()) first_viable_.push_back(*r);
      Archive(*r);
      out.push_back(std::move(*r));
    }
    return out;
  }

  std::optional<Individual> Evaluate(const std::vector<Value>& args) const {
    BranchTrace trace(fn_.num_nodes);
    Individual ind;
    ind.args = args;
    ind.outcome = Execute(fn_, args, cfg_.limits, &trace);
    if (ind.outcome.status != ExecStatus::kOk) return std::nullopt;
    ind.goals.assign(num_goals_, 0);
    int branches = 0;
    for (const auto& [id, index] : branch_index_) {
      for (bool taken : {true, false}) {
        if (trace.Covered(id, taken)) {
          ind.goals[index + (taken ? 0 : 1)] = 1;
          ++branches;
        }
      }
    }
    // Mutants only need enough steps to show they diverge; the final report
    // re-runs the suite under the full limits.
    ExecLimits mutant_limits = cfg_.limits;
    mutant_limits.max_steps = std::min(cfg_.limits.max_steps, ind.outcome.steps * 4 + 200);
    int kills = 0;
    for (size_t m = 0; m < mutants_.size(); ++m) {
      ExecOutcome got = Execute(mutants_[m].mutated, args, mutant_limits);
      if (!OutcomesMatch(ind.outcome, got, cfg_.float_tol)) {
        ind.goals[branch_goals_ + m] = 1;
        ++kills;
      }
    }
    if (branch_goals_ > 0) ind.fitness += cfg_.branch_weight * branches / branch_goals_;
    if (!mutants_.empty()) {
      ind.fitness += cfg_.kill_weight * kills / static_cast<double>(mutants_.size());
    }
    return ind;
  }

  void Archive(const Individual& ind) {
    bool adds = false;
    for (size_t g = 0; g < num_goals_; ++g) {
      if (ind.goals[g] != 0 && covered_[g] == 0) {
        covered_[g] = 1;
        adds = true;
      }
    }
    if (adds) {
      archive_.push_back(ind);
      improved_ = true;
    }
  }

  const Individual& Tournament(const std::vector<Individual>& pop) {
    const Individual* best = nullptr;
    for (int i = 0; i < 3; ++i) {
      const Individual& c = sampler_.Pick(pop);
      if (best == nullptr || c.fitness > best->fitness ||
          (c.fitness == best->fitness && c.order < best->order)) {
        best = &c;
      }
    }
    return *best;
  }

  static bool Better(const Individual& a, const Individual& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.order < b.order;
  }

  std::vector<Individual> NextGeneration(std::vector<Individual>& pop) {
    improved_ = false;
    std::sort(pop.begin(), pop.end(), Better);
    std::vector<Individual> next(pop.begin(), pop.begin() + std::min<size_t>(2, pop.size()));
    std::vector<std::vector<Value>> children;
    const size_t n = fn_.def.params.size();
    // Oversample: duplicates and rejected children fall out during evaluation.
    while (static_cast<int>(children.size()) < cfg_.population_size * 2) {
      std::vector<Value> child = Tournament(pop).args;
      if (n >= 2 && sampler_.Unit() < 0.7) {
        const auto& other = Tournament(pop).args;
        auto point = static_cast<size_t>(sampler_.Range(1, static_cast<std::int64_t>(n) - 1));
        for (size_t i = point; i < n; ++i) child[i] = other[i];
      }
      bool changed = false;
      for (size_t i = 0; i < n; ++i) {
        if (sampler_.Unit() < 1.0 / static_cast<double>(n)) {
          child[i] = sampler_.Perturb(child[i], fn_.def.params[i].type);
          changed = true;
        }
      }
      if (!changed && n > 0) {
        size_t i = static_cast<size_t>(sampler_.Range(0, static_cast<std::int64_t>(n) - 1));
        child[i] = sampler_.Perturb(child[i], fn_.def.params[i].type);
      }
      children.push_back(std::move(child));
      if (n == 0) break;
    }
    std::vector<Individual> evaluated = EvaluateAll(std::move(children));
    for (auto& ind : evaluated) {
      if (static_cast<int>(next.size()) >= cfg_.population_size) break;
      next.push_back(std::move(ind));
    }
    stagnation_ = improved_ ? 0 : stagnation_ + 1;
    if (n == 0) stagnation_ = cfg_.stagnation_generations;
    return next;
  }

  Expected<TestSuite, NoViableInputs> Assemble() {
    std::vector<const Individual*> pool;
    for (const Individual& ind : archive_) pool.push_back(&ind);
    std::vector<std::uint8_t> target = covered_;
    std::vector<std::uint8_t> have(num_goals_, 0);
    std::vector<const Individual*> chosen;
    while (true) {
      const Individual* best = nullptr;
      int best_gain = 0;
      for (const Individual* ind : pool) {
        int gain = 0;
        for (size_t g = 0; g < num_goals_; ++g) gain += (ind->goals[g] != 0 && have[g] == 0) ? 1 : 0;
        if (gain > best_gain) {
          best = ind;
          best_gain = gain;
        }
      }
      if (best == nullptr) break;
      chosen.push_back(best);
      for (size_t g = 0; g < num_goals_; ++g) have[g] |= best->goals[g];
    }
    // Redundancy pass: a case whose removal keeps every goal covered goes.
    for (size_t i = chosen.size(); i-- > 0;) {
      std::vector<std::uint8_t> without(num_goals_, 0);
      for (size_t j = 0; j < chosen.size(); ++j) {
        if (j == i) continue;
        for (size_t g = 0; g < num_goals_; ++g) without[g] |= chosen[j]->goals[g];
      }
      if (without == have) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (chosen.empty()) chosen.push_back(&first_viable_.front());
    std::sort(chosen.begin(), chosen.end(),
              [](const Individual* a, const Individual* b) { return a->order < b->order; });

    TestSuite suite;
    suite.id = id_;
    suite.function_id = id_;
    suite.dialect = fn_.dialect();
    for (const Individual* ind : chosen) {
      TestCase tc;
      for (const Value& a : ind->args) tc.args.push_back(a.DeepCopy());
      tc.expected = ind->outcome;
      tc.expected.steps = 0;
      tc.float_tol = cfg_.float_tol;
      suite.cases.push_back(std::move(tc));
    }
    suite.assert_count = SuiteAssertCount(fn_.def, suite.cases);
    auto report = MutationScore(suite.cases, mutants_, cfg_.limits, cfg_.jobs);
    if (report) suite.report = std::move(*report);
    return suite;
  }

  const TypedFunction& fn_;
  std::string id_;
  const std::vector<Mutant>& mutants_;
  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  Sampler sampler_;
  std::map<int, int> branch_index_;
  size_t branch_goals_ = 0;
  size_t num_goals_ = 0;
  std::vector<std::uint8_t> covered_;
  std::vector<Individual> archive_;
  std::vector<Individual> first_viable_;
  std::set<std::string> seen_;
  int evaluations_ = 0;
  int stagnation_ = 0;
  bool improved_ = false;
};

}  // namespace

std::vector<Value> RandomArgs(const FunctionDef& fn, const GenConfig& cfg, std::mt19937_64& rng) {
  Constants c;
  CollectConstants(fn.body, cfg.int_bound, c);
  Sampler sampler(cfg, std::move(c), rng);
  std::vector<Value> args;
  for (const Param& p : fn.params) args.push_back(sampler.Random(p.type));
  return args;
}

Expected<TestSuite, NoViableInputs> EvolveSuite(const TypedFunction& fn,
                                                const std::string& function_id,
                                                const std::vector<Mutant>& mutants,
                                                const GenConfig& cfg) {
  return Search(fn, function_id, mutants, cfg).Run();
}

Expected<TestSuite, NoViableInputs> EvolveSuite(const TypedFunction& fn,
                                                const std::string& function_id,
                                                const GenConfig& cfg) {
  std::vector<Mutant> mutants = GenerateMutants(fn);
  return EvolveSuite(fn, function_id, mutants, cfg);
}

}  // namespace xlt
