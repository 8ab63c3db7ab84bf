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

#include "xlt/translate.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xlt/parse.h"

namespace xlt {
namespace {

struct RenderError {
  std::string message;
};

bool IsPy(Dialect d) { return d == Dialect::kDP; }

class Renderer {
 public:
  Renderer(const TypedFunction& src, Dialect target, const std::vector<int>* choices)
      : src_(src), sd_(src.dialect()), td_(target), choices_(choices) {}

  FunctionDef Run() {
    const FunctionDef& def = src_.def;
    if (!IsPy(sd_) && IsPy(td_) && MentionsInts(def)) {
      wrap_ints_ = Choose(SiteKind::kIntCastPolicy, -1) == 0;
    }
    FunctionDef out;
    out.name = def.name;
    out.dialect = td_;
    out.pos = def.pos;
    for (size_t i = 0; i < def.params.size(); ++i) {
      Type t = IsPy(sd_) ? src_.slot_types[i] : def.params[i].type;
      out.params.push_back({def.params[i].name, MapType(t)});
    }
    out.ret = MapType(def.ret);
    out.body = Block(def.body);
    return out;
  }

  const std::vector<AmbiguitySite>& sites() const { return sites_; }
  const PrintOptions& print_options() const { return options_; }

 private:
  static bool TypeMentionsInt(const Type& t) {
    return t.IsInt() || (t.IsSeq() && IsIntKind(t.elem));
  }

  static bool ExprMentionsInt(const Expr& e) {
    if (TypeMentionsInt(e.type)) return true;
    if (e.kind == ExprKind::kCast && TypeMentionsInt(e.cast_type)) return true;
    return std::any_of(e.kids.begin(), e.kids.end(), ExprMentionsInt);
  }

  static bool BlockMentionsInt(const std::vector<Stmt>& block) {
    for (const Stmt& s : block) {
      if (s.kind == StmtKind::kDecl && TypeMentionsInt(s.decl_type)) return true;
      if (std::any_of(s.exprs.begin(), s.exprs.end(), ExprMentionsInt)) return true;
      if (BlockMentionsInt(s.body) || BlockMentionsInt(s.orelse)) return true;
    }
    return false;
  }

  static bool MentionsInts(const FunctionDef& def) {
    if (TypeMentionsInt(def.ret)) return true;
    for (const Param& p : def.params) {
      if (TypeMentionsInt(p.type)) return true;
    }
    return BlockMentionsInt(def.body);
  }

  int Choose(SiteKind kind, int node_id) {
    size_t index = sites_.size();
    sites_.push_back({kind, node_id, PathOf(node_id), 2});
    if (choices_ == nullptr || index >= choices_->size()) return 0;
    return (*choices_)[index];
  }

  std::string PathOf(int node_id) {
    if (node_id < 0) return "function";
    if (paths_.empty()) {
      FunctionDef copy = src_.def;
      ForEachNode(copy, [&](NodeRef& ref) { paths_[ref.id] = ref.path; });
    }
    auto it = paths_.find(node_id);
    return it == paths_.end() ? "?" : it->second;
  }

  TypeKind MapScalar(TypeKind k) const {
    if (!IsIntKind(k) || IsPy(sd_) == IsPy(td_)) return k;
    if (IsPy(td_)) return wrap_ints_ ? k : TypeKind::kBigInt;
    return k == TypeKind::kBigInt ? TypeKind::kI32 : k;
  }

  Type MapType(const Type& t) const {
    if (t.IsSeq()) {
      TypeKind kind = IsPy(sd_) || IsPy(td_) ? TypeKind::kLst : t.kind;
      return Type{kind, MapScalar(t.elem)};
    }
    return Type::Of(MapScalar(t.kind));
  }

  std::vector<Stmt> Block(const std::vector<Stmt>& block) {
    std::vector<Stmt> out;
    out.reserve(block.size());
    for (const Stmt& s : block) out.push_back(Statement(s));
    return out;
  }

  static bool BothInt(const Expr& a, const Expr& b) { return a.type.IsInt() && b.type.IsInt(); }

  static bool IsPromotedIntDiv(const Expr& e) {
    if (e.binary != BinaryOp::kDiv) return false;
    const Expr& lhs = e.kids[0];
    return lhs.kind == ExprKind::kCast && lhs.cast_type.kind == TypeKind::kF64 &&
           lhs.kids[0].type.IsInt() && e.kids[1].type.IsInt();
  }

  Stmt Statement(const Stmt& s) {
    Stmt t;
    t.kind = s.kind;
    t.name = s.name;
    t.compound = s.compound;
    t.pos = s.pos;
    t.slot = s.slot;
    t.id = s.id;
    if (s.kind == StmtKind::kDecl) {
      t.decl_type = MapType(IsPy(sd_) && s.slot >= 0 ? src_.slot_types[s.slot] : s.decl_type);
    }
    for (const Expr& e : s.exprs) t.exprs.push_back(Expression(e));
    if (s.kind == StmtKind::kAssign && s.compound) {
      bool ints = BothInt(s.exprs[0], s.exprs[1]);
      t.compound = ArithOp(*s.compound, ints, s.id, nullptr);
    }
    if (s.kind == StmtKind::kIf && s.exprs[0].kind == ExprKind::kBinary &&
        IsComparison(s.exprs[0].binary)) {
      if (Choose(SiteKind::kConditionPolarity, s.exprs[0].id) == 1) {
        t.exprs[0].binary = NegateComparison(t.exprs[0].binary);
      }
    }
    t.body = Block(s.body);
    t.orelse = Block(s.orelse);
    return t;
  }

  // Target operator for an arithmetic source operator. `cast_lhs` is set when a
  // true division has to promote its left operand explicitly.
  BinaryOp ArithOp(BinaryOp op, bool ints, int node_id, bool* cast_lhs) {
    if (IsPy(sd_) == IsPy(td_)) return op;
    if (IsPy(td_)) {
      if (op == BinaryOp::kDiv && ints) {
        return Choose(SiteKind::kIntDivRendering, node_id) == 0 ? BinaryOp::kFloorDiv
                                                                : BinaryOp::kDiv;
      }
      if (op == BinaryOp::kMul && ints) {
        return Choose(SiteKind::kMulVsPow, node_id) == 0 ? BinaryOp::kMul : BinaryOp::kPow;
      }
      return op;
    }
    switch (op) {
      case BinaryOp::kPow:
        throw RenderError{"'**' has no counterpart in " + std::string(DialectName(td_))};
      case BinaryOp::kFloorDiv:
        if (!ints) throw RenderError{"float '//' has no counterpart in " + std::string(DialectName(td_))};
        return BinaryOp::kDiv;
      case BinaryOp::kDiv:
        if (ints) {
          if (cast_lhs == nullptr) throw RenderError{"integer '/=' in " + std::string(DialectName(sd_))};
          *cast_lhs = Choose(SiteKind::kIntDivRendering, node_id) == 0;
        }
        return op;
      default:
        return op;
    }
  }

  Expr Expression(const Expr& s) {
    Expr t;
    t.kind = s.kind;
    t.int_value = s.int_value;
    t.float_value = s.float_value;
    t.bool_value = s.bool_value;
    t.text = s.text;
    t.extreme = s.extreme;
    t.unary = s.unary;
    t.binary = s.binary;
    t.builtin = s.builtin;
    t.cast_type = s.cast_type;
    t.pos = s.pos;
    t.slot = s.slot;
    t.id = s.id;
    t.type = MapType(s.type);
    for (const Expr& k : s.kids) t.kids.push_back(Expression(k));

    if (s.kind == ExprKind::kBinary && IsPy(sd_) && !IsPy(td_) &&
        s.binary == BinaryOp::kFloorDiv) {
      t.binary = BinaryOp::kDiv;
    }
    if (s.kind == ExprKind::kCast) t.cast_type = MapType(s.cast_type);

    for (size_t i = 0; i < t.kids.size(); ++i) {
      if (t.id < 0 || t.kids[i].id < 0) continue;
      bool need_target = ExprLevel(t.kids[i], td_) < ChildMinLevel(t, i, td_);
      bool need_source = ExprLevel(s.kids[i], sd_) < ChildMinLevel(s, i, sd_);
      if (need_target && !need_source) {
        if (Choose(SiteKind::kPrecedenceParens, t.id) == 1) {
          options_.bare_children.insert({t.id, static_cast<int>(i)});
        }
      }
    }

    switch (s.kind) {
      case ExprKind::kExtreme:
        if (Choose(SiteKind::kExtremeConstant, s.id) == 1) {
          t.extreme = s.extreme == Extreme::kMax ? Extreme::kMin : Extreme::kMax;
        }
        break;
      case ExprKind::kBinary: {
        if (!IsPy(sd_) && IsPy(td_) && IsPromotedIntDiv(s)) {
          // `( double ) a / b` is just `a / b` under true division.
          Expr inner = std::move(t.kids[0].kids[0]);
          t.kids[0] = std::move(inner);
          break;
        }
        bool cast_lhs = false;
        t.binary = ArithOp(s.binary, BothInt(s.kids[0], s.kids[1]), s.id, &cast_lhs);
        if (cast_lhs) {
          Expr cast = Expr::Cast(Type::Of(TypeKind::kF64), std::move(t.kids[0]));
          cast.type = cast.cast_type;
          t.kids[0] = std::move(cast);
        }
        break;
      }
      case ExprKind::kTernary:
        if (Choose(SiteKind::kTernarySwap, s.id) == 1) std::swap(t.kids[1], t.kids[2]);
        break;
      default:
        break;
    }
    return t;
  }

  const TypedFunction& src_;
  Dialect sd_;
  Dialect td_;
  const std::vector<int>* choices_;
  bool wrap_ints_ = true;
  std::vector<AmbiguitySite> sites_;
  PrintOptions options_;
  std::map<int, std::string> paths_;
};

struct Prepared {
  FunctionDef reference;
  std::vector<AmbiguitySite> sites;
};

// The option-0 rendering must survive printing and re-parsing unchanged and be
// well-typed in the target; otherwise the function is outside what the
// translator handles (a name that is a keyword in the target, DP-only scoping).
Expected<Prepared, UnsupportedConstruct> Prepare(const TypedFunction& fn, Dialect target) {
  Renderer r(fn, target, nullptr);
  FunctionDef out;
  try {
    out = r.Run();
  } catch (const RenderError& u) {
    return MakeUnexpected(UnsupportedConstruct{u.message});
  }
  std::string text = Print(out);
  auto parsed = Parse(target, text);
  if (!parsed || !StructurallyEqual(*parsed, out)) {
    return MakeUnexpected(UnsupportedConstruct{"'" + fn.name() + "' does not render in " +
                                               std::string(DialectName(target))});
  }
  auto typed = Typecheck(*parsed);
  if (!typed) {
    return MakeUnexpected(UnsupportedConstruct{"rendering is ill-typed in " +
                                               std::string(DialectName(target)) + ": " +
                                               typed.error().ToString()});
  }
  return Prepared{std::move(*parsed), r.sites()};
}

}  // namespace

std::string_view SiteKindName(SiteKind kind) {
  switch (kind) {
    case SiteKind::kIntDivRendering:
      return "IntDivRendering";
    case SiteKind::kPrecedenceParens:
      return "PrecedenceParens";
    case SiteKind::kExtremeConstant:
      return "ExtremeConstant";
    case SiteKind::kConditionPolarity:
      return "ConditionPolarity";
    case SiteKind::kTernarySwap:
      return "TernarySwap";
    case SiteKind::kMulVsPow:
      return "MulVsPow";
    case SiteKind::kIntCastPolicy:
      return "IntCastPolicy";
  }
  return "?";
}

std::optional<SiteKind> SiteKindFromName(std::string_view name) {
  for (SiteKind k : kSiteKinds) {
    if (SiteKindName(k) == name) return k;
  }
  return std::nullopt;
}

Expected<std::vector<AmbiguitySite>, UnsupportedConstruct> DetectSites(const TypedFunction& fn,
                                                                       Dialect target) {
  auto prepared = Prepare(fn, target);
  if (!prepared) return MakeUnexpected(prepared.error());
  return std::move(prepared->sites);
}

Expected<Rendering, UnsupportedConstruct> RenderTranslation(const TypedFunction& fn,
                                                            Dialect target,
                                                            const std::vector<int>& choices) {
  Renderer r(fn, target, &choices);
  FunctionDef out;
  try {
    out = r.Run();
  } catch (const RenderError& u) {
    return MakeUnexpected(UnsupportedConstruct{u.message});
  }
  Rendering rendering;
  rendering.text = Print(out, r.print_options());
  if (auto parsed = Parse(target, rendering.text)) rendering.fn = std::move(*parsed);
  return rendering;
}

Expected<FunctionDef, UnsupportedConstruct> ReferenceTranspile(const TypedFunction& fn,
                                                               Dialect target) {
  auto prepared = Prepare(fn, target);
  if (!prepared) return MakeUnexpected(prepared.error());
  return std::move(prepared->reference);
}

// ---------------------------------------------------------------------------
// Model

AmbiguityModel AmbiguityModel::Perfect() {
  NoiseConfig noise;
  for (SiteKind k : kSiteKinds) noise.error_prob[k] = 0.0;
  return WithNoise(std::move(noise));
}

AmbiguityModel AmbiguityModel::WithNoise(NoiseConfig noise) {
  AmbiguityModel m;
  m.noise_ = std::move(noise);
  return m;
}

std::vector<double> AmbiguityModel::Counts(const ModelKey& key) const {
  std::vector<double> counts(2, kSmoothing);
  auto it = learned_.find(key);
  if (it != learned_.end()) {
    if (it->second.size() > counts.size()) counts.resize(it->second.size(), kSmoothing);
    for (size_t i = 0; i < it->second.size(); ++i) counts[i] += it->second[i];
  }
  return counts;
}

double AmbiguityModel::Prob(SiteKind kind, Dialect src, Dialect tgt, int option) const {
  if (noise_) {
    auto it = noise_->error_prob.find(kind);
    if (it != noise_->error_prob.end()) return option == 0 ? 1.0 - it->second : it->second;
  }
  std::vector<double> counts = Counts({kind, src, tgt});
  if (option < 0 || static_cast<size_t>(option) >= counts.size()) return 0.0;
  double total = 0.0;
  for (double c : counts) total += c;
  return counts[option] / total;
}

void AmbiguityModel::Learn(const DirectedChoices& choices) {
  for (size_t i = 0; i < choices.kinds.size() && i < choices.options.size(); ++i) {
    std::vector<double>& counts = learned_[{choices.kinds[i], choices.src, choices.tgt}];
    size_t option = static_cast<size_t>(choices.options[i]);
    if (counts.size() <= option) counts.resize(std::max<size_t>(2, option + 1), 0.0);
    counts[option] += 1.0;
  }
}

AmbiguityModel AmbiguityModel::LearnUpdate(const std::vector<DirectedChoices>& batch) const {
  AmbiguityModel next = *this;
  for (const DirectedChoices& c : batch) next.Learn(c);
  return next;
}

std::string AmbiguityModel::ToJsonl() const {
  std::string out;
  if (noise_) {
    for (const auto& [kind, p] : noise_->error_prob) {
      nlohmann::json j = {{"kind", SiteKindName(kind)}, {"error_prob", p}};
      out += j.dump() + "\n";
    }
  }
  for (const auto& [key, learned] : learned_) {
    std::vector<double> counts = Counts(key);
    for (size_t o = 0; o < counts.size(); ++o) {
      nlohmann::json j = {{"kind", SiteKindName(key.kind)},
                          {"src", DialectName(key.src)},
                          {"tgt", DialectName(key.tgt)},
                          {"option", o},
                          {"count", counts[o]}};
      out += j.dump() + "\n";
    }
  }
  return out;
}

Expected<AmbiguityModel, std::string> AmbiguityModel::FromJsonl(const std::string& text) {
  AmbiguityModel m;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& why) {
      return MakeUnexpected("line " + std::to_string(line_no) + ": " + why);
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail("not a JSON object");
    try {
      if (j.contains("error_prob")) {
        auto kind = SiteKindFromName(j.at("kind").get<std::string>());
        double p = j.at("error_prob").get<double>();
        if (!kind) return fail("unknown site kind");
        if (!(p >= 0.0 && p <= 1.0)) return fail("error_prob outside [0,1]");
        if (!m.noise_) m.noise_.emplace();
        m.noise_->error_prob[*kind] = p;
        continue;
      }
      auto kind = SiteKindFromName(j.at("kind").get<std::string>());
      auto src = DialectFromName(j.at("src").get<std::string>());
      auto tgt = DialectFromName(j.at("tgt").get<std::string>());
      int option = j.at("option").get<int>();
      double count = j.at("count").get<double>();
      if (!kind || !src || !tgt) return fail("unknown site kind or dialect");
      if (option < 0 || option > 64) return fail("option out of range");
      if (!(count >= kSmoothing)) return fail("count below the smoothing prior");
      std::vector<double>& counts = m.learned_[{*kind, *src, *tgt}];
      if (counts.size() <= static_cast<size_t>(option)) counts.resize(std::max(2, option + 1), 0.0);
      counts[option] = count - kSmoothing;
    } catch (const nlohmann::json::exception& e) {
      return fail(e.what());
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Beam

double BeamScore(double raw_logprob, int token_length, double alpha) {
  if (token_length <= 0) return raw_logprob;
  return raw_logprob / std::pow(static_cast<double>(token_length), alpha);
}

namespace {

long long ScoreKey(double score) { return std::llround(score * 1e9); }

struct SiteOptions {
  std::vector<int> options;       // allowed option indices, most probable first
  std::vector<double> logprob;    // parallel to options
  std::vector<int> length_delta;  // parallel to options
};

}  // namespace

Expected<Beam, UnsupportedConstruct> EnumerateCandidates(const TypedFunction& fn,
                                                         const std::string& source_id,
                                                         Dialect target,
                                                         const AmbiguityModel& model, int k,
                                                         double alpha) {
  auto prepared = Prepare(fn, target);
  if (!prepared) return MakeUnexpected(prepared.error());
  Beam beam;
  beam.source_id = source_id;
  beam.source_dialect = fn.dialect();
  beam.target = target;
  beam.k = k;
  beam.sites = prepared->sites;
  const size_t n = beam.sites.size();

  std::map<std::vector<int>, Rendering> rendered;
  auto render = [&](const std::vector<int>& choices) -> const Rendering& {
    auto it = rendered.find(choices);
    if (it == rendered.end()) {
      auto r = RenderTranslation(fn, target, choices);
      it = rendered.emplace(choices, std::move(*r)).first;
    }
    return it->second;
  };

  std::vector<int> zeros(n, 0);
  const int base_length = TokenCount(target, render(zeros).text);
  std::vector<SiteOptions> per_site(n);
  for (size_t i = 0; i < n; ++i) {
    const AmbiguitySite& site = beam.sites[i];
    std::vector<std::pair<double, int>> ranked;
    for (int o = 0; o < site.num_options; ++o) {
      double p = model.Prob(site.kind, fn.dialect(), target, o);
      if (p > 0.0) ranked.push_back({-std::log(p), o});
    }
    std::sort(ranked.begin(), ranked.end());
    for (auto [neg, o] : ranked) {
      per_site[i].options.push_back(o);
      per_site[i].logprob.push_back(-neg);
      int delta = 0;
      if (o != 0) {
        std::vector<int> single = zeros;
        single[i] = o;
        delta = TokenCount(target, render(single).text) - base_length;
      }
      per_site[i].length_delta.push_back(delta);
    }
  }

  struct Scored {
    std::vector<int> ranks;  // index into per_site[i].options
    double raw = 0.0;
    int length = 0;
  };
  auto scored_of = [&](const std::vector<int>& ranks) {
    Scored s{ranks, 0.0, base_length};
    for (size_t i = 0; i < n; ++i) {
      s.raw += per_site[i].logprob[ranks[i]];
      s.length += per_site[i].length_delta[ranks[i]];
    }
    return s;
  };

  double space = 1.0;
  for (const SiteOptions& s : per_site) space *= static_cast<double>(s.options.size());

  std::vector<Scored> pool;
  if (space <= kExactEnumerationLimit) {
    std::vector<int> ranks(n, 0);
    while (true) {
      pool.push_back(scored_of(ranks));
      size_t i = 0;
      while (i < n && ++ranks[i] == static_cast<int>(per_site[i].options.size())) ranks[i++] = 0;
      if (i == n) break;
    }
  } else {
    // Best-first by raw log-probability: each rank vector has a unique parent
    // obtained by decrementing its last non-zero position.
    const size_t want = static_cast<size_t>(std::max(k, 1)) * 4;
    struct Node {
      double raw;
      std::vector<int> ranks;
      size_t last;
      bool operator<(const Node& o) const {
        if (raw != o.raw) return raw < o.raw;
        return ranks > o.ranks;
      }
    };
    std::priority_queue<Node> frontier;
    frontier.push({scored_of(std::vector<int>(n, 0)).raw, std::vector<int>(n, 0), 0});
    while (!frontier.empty() && pool.size() < want) {
      Node top = frontier.top();
      frontier.pop();
      pool.push_back(scored_of(top.ranks));
      for (size_t j = top.last; j < n; ++j) {
        if (top.ranks[j] + 1 >= static_cast<int>(per_site[j].options.size())) continue;
        Node child = top;
        ++child.ranks[j];
        child.last = j;
        child.raw = scored_of(child.ranks).raw;
        frontier.push(std::move(child));
      }
    }
  }

  auto choices_of = [&](const std::vector<int>& ranks) {
    std::vector<int> c(n);
    for (size_t i = 0; i < n; ++i) c[i] = per_site[i].options[ranks[i]];
    return c;
  };

  std::vector<std::pair<long long, size_t>> order;
  order.reserve(pool.size());
  for (size_t i = 0; i < pool.size(); ++i) {
    order.push_back({ScoreKey(BeamScore(pool[i].raw, pool[i].length, alpha)), i});
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  // Everything tied with the k-th key is rendered so that the text tie-break
  // decides membership.
  size_t cut = std::min(order.size(), static_cast<size_t>(std::max(k, 0)));
  if (cut > 0) {
    long long boundary = order[cut - 1].first;
    while (cut < order.size() && order[cut].first == boundary) ++cut;
  }
  for (size_t i = 0; i < cut; ++i) {
    const Scored& s = pool[order[i].second];
    Candidate c;
    c.choices = choices_of(s.ranks);
    c.rendering = render(c.choices);
    c.raw_logprob = s.raw;
    c.token_length = TokenCount(target, c.rendering.text);
    c.score = BeamScore(c.raw_logprob, c.token_length, alpha);
    beam.candidates.push_back(std::move(c));
  }
  std::sort(beam.candidates.begin(), beam.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              long long ka = ScoreKey(a.score);
              long long kb = ScoreKey(b.score);
              if (ka != kb) return ka > kb;
              if (a.rendering.text != b.rendering.text) return a.rendering.text < b.rendering.text;
              return a.choices < b.choices;
            });
  if (beam.candidates.size() > static_cast<size_t>(std::max(k, 0))) {
    beam.candidates.resize(static_cast<size_t>(std::max(k, 0)));
  }
  return beam;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

void NormalizeSeqTypes(std::vector<Stmt>& block);

void NormalizeType(Type& t) {
  if (t.kind == TypeKind::kArr) t.kind = TypeKind::kLst;
}

void NormalizeExpr(Expr& e) {
  NormalizeType(e.cast_type);
  for (Expr& k : e.kids) NormalizeExpr(k);
}

void NormalizeSeqTypes(std::vector<Stmt>& block) {
  for (Stmt& s : block) {
    NormalizeType(s.decl_type);
    for (Expr& e : s.exprs) NormalizeExpr(e);
    NormalizeSeqTypes(s.body);
    NormalizeSeqTypes(s.orelse);
  }
}

FunctionDef Normalized(FunctionDef fn) {
  NormalizeType(fn.ret);
  for (Param& p : fn.params) NormalizeType(p.type);
  NormalizeSeqTypes(fn.body);
  return fn;
}

constexpr int kMatchRenderLimit = 2048;
constexpr int kMatchMaxWeight = 4;

}  // namespace

std::optional<DirectedChoices> MatchChoices(const TypedFunction& from, const FunctionDef& to) {
  auto sites = DetectSites(from, to.dialect);
  if (!sites) return std::nullopt;
  const FunctionDef want = Normalized(to);
  const int n = static_cast<int>(sites->size());
  int budget = kMatchRenderLimit;
  DirectedChoices result;
  result.src = from.dialect();
  result.tgt = to.dialect;
  for (const AmbiguitySite& s : *sites) result.kinds.push_back(s.kind);

  auto try_choices = [&](const std::vector<int>& choices) {
    --budget;
    auto r = RenderTranslation(from, to.dialect, choices);
    return r && r->fn && StructurallyEqual(Normalized(*r->fn), want);
  };

  // Subsets of flipped sites in increasing size, each in lexicographic order.
  for (int weight = 0; weight <= std::min(n, kMatchMaxWeight); ++weight) {
    std::vector<int> pick(weight);
    for (int i = 0; i < weight; ++i) pick[i] = i;
    while (true) {
      if (budget <= 0) return std::nullopt;
      std::vector<int> choices(n, 0);
      for (int p : pick) choices[p] = 1;
      if (try_choices(choices)) {
        result.options = std::move(choices);
        return result;
      }
      int i = weight - 1;
      while (i >= 0 && pick[i] == n - weight + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < weight; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace xlt
