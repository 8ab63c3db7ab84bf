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

#ifndef XLT_TRANSLATE_H_
#define XLT_TRANSLATE_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xlt/ast.h"
#include "xlt/expected.h"
#include "xlt/typecheck.h"

namespace xlt {

enum class SiteKind : std::uint8_t {
  kIntDivRendering,
  kPrecedenceParens,
  kExtremeConstant,
  kConditionPolarity,
  kTernarySwap,
  kMulVsPow,
  kIntCastPolicy,
};

inline constexpr std::array<SiteKind, 7> kSiteKinds = {
    SiteKind::kIntDivRendering,   SiteKind::kPrecedenceParens, SiteKind::kExtremeConstant,
    SiteKind::kConditionPolarity, SiteKind::kTernarySwap,      SiteKind::kMulVsPow,
    SiteKind::kIntCastPolicy};

std::string_view SiteKindName(SiteKind kind);
std::optional<SiteKind> SiteKindFromName(std::string_view name);

// A place where more than one target rendering is plausible. Option 0
// preserves the source semantics; option 1 is the documented confusion.
struct AmbiguitySite {
  SiteKind kind = SiteKind::kIntDivRendering;
  int node_id = -1;  // source node, -1 for function-wide sites
  std::string location;
  int num_options = 2;
};

struct UnsupportedConstruct {
  std::string message;
};

// Sites for translating fn into target, in a fixed walk order.
Expected<std::vector<AmbiguitySite>, UnsupportedConstruct> DetectSites(const TypedFunction& fn,
                                                                       Dialect target);

struct Rendering {
  std::string text;
  std::optional<FunctionDef> fn;  // absent when the text does not parse
};

// Renders fn into target with one option index per site.
Expected<Rendering, UnsupportedConstruct> RenderTranslation(const TypedFunction& fn,
                                                            Dialect target,
                                                            const std::vector<int>& choices);

// Option 0 at every site.
Expected<FunctionDef, UnsupportedConstruct> ReferenceTranspile(const TypedFunction& fn,
                                                               Dialect target);

struct ModelKey {
  SiteKind kind;
  Dialect src;
  Dialect tgt;
  friend auto operator<=>(const ModelKey&, const ModelKey&) = default;
};

// Fixed error probabilities that override the learned counts, per site kind.
struct NoiseConfig {
  std::map<SiteKind, double> error_prob;
  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

// Choices a pair makes at the sites of one translation direction.
struct DirectedChoices {
  Dialect src = Dialect::kDJ;
  Dialect tgt = Dialect::kDP;
  std::vector<SiteKind> kinds;
  std::vector<int> options;
};

// Categorical weights per (site kind, directed language pair), stored as
// pseudo-counts on top of a Laplace prior.
class AmbiguityModel {
 public:
  static constexpr double kSmoothing = 1.0;

  static AmbiguityModel Uniform() { return AmbiguityModel(); }
  // All mass on option 0: every site has a single candidate.
  static AmbiguityModel Perfect();
  static AmbiguityModel WithNoise(NoiseConfig noise);

  double Prob(SiteKind kind, Dialect src, Dialect tgt, int option) const;
  // Pseudo-counts including the prior.
  std::vector<double> Counts(const ModelKey& key) const;

  // New model with each chosen option's count raised by one per occurrence.
  AmbiguityModel LearnUpdate(const std::vector<DirectedChoices>& batch) const;
  void Learn(const DirectedChoices& choices);

  const std::optional<NoiseConfig>& noise() const { return noise_; }
  const std::map<ModelKey, std::vector<double>>& learned() const { return learned_; }

  // One record per (kind, pair, option): {"kind","src","tgt","option","count"},
  // preceded by {"kind","error_prob"} records for a noise model.
  std::string ToJsonl() const;
  static Expected<AmbiguityModel, std::string> FromJsonl(const std::string& text);

  friend bool operator==(const AmbiguityModel&, const AmbiguityModel&) = default;

 private:
  // Counts added by learning, without the prior.
  std::map<ModelKey, std::vector<double>> learned_;
  std::optional<NoiseConfig> noise_;
};

struct Candidate {
  Rendering rendering;
  std::vector<int> choices;
  double raw_logprob = 0.0;
  int token_length = 0;
  double score = 0.0;
};

struct Beam {
  std::string source_id;
  Dialect source_dialect = Dialect::kDJ;
  Dialect target = Dialect::kDP;
  int k = 20;
  std::vector<AmbiguitySite> sites;
  std::vector<Candidate> candidates;  // score descending, ties by token text
};

inline constexpr int kExactEnumerationLimit = 4096;

// Length-penalized score of a candidate.
double BeamScore(double raw_logprob, int token_length, double alpha);

Expected<Beam, UnsupportedConstruct> EnumerateCandidates(const TypedFunction& fn,
                                                         const std::string& source_id,
                                                         Dialect target,
                                                         const AmbiguityModel& model, int k,
                                                         double alpha);

// Choice vector for translating `from` into the dialect of `to` whose rendering
// equals `to` up to the Arr/Lst distinction, searched in order of the number of
// non-zero options. Absent when none matches within the search limit.
std::optional<DirectedChoices> MatchChoices(const TypedFunction& from, const FunctionDef& to);

}  // namespace xlt

#endif  // XLT_TRANSLATE_H_
