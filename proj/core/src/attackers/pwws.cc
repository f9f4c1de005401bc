//
// Copyright 2026 The AdvForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Probability-weighted word saliency: synonym substitution ordered by
// H_i = dp_i(w_i*) * softmax(s)_i.

#include <algorithm>
#include <numeric>

#include "advforge/error.h"
#include "attackers/common.h"

namespace advforge::internal {
namespace {

class Pwws final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "pwws", {Accessibility::kScore}, {Perturbation::kWord}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "pwws");
    if (!res.synonyms) throw ConfigError("pwws needs a synonym provider");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const int y = ctx.label();

    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < sample.tokens.size(); ++i) {
      if (!IsPunctuationToken(sample.tokens[i].surface)) positions.push_back(i);
    }
    if (positions.empty()) return std::nullopt;

    const std::vector<std::string> original = Surfaces(sample);
    const double p0 = TrueProb(*ctx.original_output(), y);

    // (1) Saliency against the unknown-word marker.
    std::vector<std::string> probes;
    for (std::size_t i : positions) {
      probes.push_back(TextWith(original, i, ctx.config().unk));
    }
    const std::vector<VictimOutput> masked = ctx.ProbAll(probes);
    std::vector<double> saliency(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j) {
      saliency[j] = p0 - TrueProb(masked[j], y);
    }
    const Vector weights = Softmax(saliency);
    ctx.TraceValue("softmax_sum",
                   std::accumulate(weights.begin(), weights.end(), 0.0));

    // (2) Best synonym per position.
    struct Choice {
      std::size_t position;
      std::string word;
      double score;
    };
    std::vector<Choice> choices;
    for (std::size_t j = 0; j < positions.size(); ++j) {
      const std::size_t i = positions[j];
      const std::vector<SubstitutionCandidate> synonyms =
          res.synonyms->Synonyms(original[i], sample.tokens[i].pos);
      if (synonyms.empty()) continue;
      std::vector<std::string> texts;
      for (const SubstitutionCandidate& c : synonyms) {
        texts.push_back(TextWith(original, i, c.replacement));
      }
      const std::vector<VictimOutput> outs = ctx.ProbAll(texts);
      std::size_t best = 0;
      double best_dp = p0 - TrueProb(outs[0], y);
      for (std::size_t c = 1; c < outs.size(); ++c) {
        const double dp = p0 - TrueProb(outs[c], y);
        if (dp > best_dp) {
          best_dp = dp;
          best = c;
        }
      }
      // (3) Priority.
      choices.push_back({i, synonyms[best].replacement, best_dp * weights[j]});
    }

    // (4) Greedy application in descending priority.
    std::stable_sort(choices.begin(), choices.end(),
                     [](const Choice& a, const Choice& b) {
                       return a.score > b.score;
                     });
    std::vector<std::string> current = original;
    for (const Choice& choice : choices) {
      current[choice.position] = choice.word;
      const std::string text = Detokenize(current);
      ctx.TraceText(text);
      if (ctx.Prob(text).predicted != y) return text;
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakePwws() { return std::make_unique<Pwws>(); }

}  // namespace advforge::internal
