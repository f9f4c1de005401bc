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

// Greedy embedding-neighbor substitution ordered by deletion importance.

#include <algorithm>
#include <numeric>

#include "attackers/common.h"

namespace advforge::internal {
namespace {

class TextFooler final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "textfooler", {Accessibility::kScore}, {Perturbation::kWord}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "textfooler");
    RequireEmbeddings(res, "textfooler");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const AttackConfig& cfg = ctx.config();
    const int y = ctx.label();

    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < sample.tokens.size(); ++i) {
      if (IsContentToken(sample.tokens[i], *res.pipeline)) positions.push_back(i);
    }
    if (positions.empty()) return std::nullopt;

    const std::vector<std::string> original = Surfaces(sample);
    const double p0 = TrueProb(*ctx.original_output(), y);

    std::vector<std::string> probes;
    for (std::size_t i : positions) probes.push_back(TextWithout(original, i));
    const std::vector<VictimOutput> deleted = ctx.ProbAll(probes);
    std::vector<double> importance(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j) {
      importance[j] = p0 - TrueProb(deleted[j], y);
      ctx.TraceValue("importance", importance[j]);
    }
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return importance[a] > importance[b];
    });

    std::vector<std::string> current = original;
    double current_p = p0;
    for (std::size_t j : order) {
      const std::size_t i = positions[j];
      const std::vector<SubstitutionCandidate> candidates = NeighborCandidates(
          res, original[i], sample.tokens[i].pos, cfg.neighbors, cfg.min_cos);
      if (candidates.empty()) continue;

      std::vector<std::string> texts;
      for (const SubstitutionCandidate& c : candidates) {
        texts.push_back(TextWith(current, i, c.replacement));
      }
      const std::vector<VictimOutput> outs = ctx.ProbSome(texts);

      std::optional<std::size_t> best_flip;
      double best_sim = 0.0;
      std::optional<std::size_t> best_drop;
      double best_p = current_p;
      for (std::size_t c = 0; c < outs.size(); ++c) {
        if (outs[c].predicted != y) {
          const double sim =
              SemanticSimilarity(sample.text, texts[c], *res.embeddings,
                                 res.pipeline.get());
          if (!best_flip || sim > best_sim) {
            best_flip = c;
            best_sim = sim;
          }
        }
        const double p = TrueProb(outs[c], y);
        if (p < best_p) {
          best_p = p;
          best_drop = c;
        }
      }
      if (best_flip) {
        ctx.TraceText(texts[*best_flip]);
        return texts[*best_flip];
      }
      if (outs.size() < texts.size()) throw BudgetExhausted();
      // Only moves that lower the gold-label probability are kept.
      if (best_drop) {
        current[i] = candidates[*best_drop].replacement;
        current_p = best_p;
        ctx.TraceText(texts[*best_drop]);
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeTextFooler() {
  return std::make_unique<TextFooler>();
}

}  // namespace advforge::internal
