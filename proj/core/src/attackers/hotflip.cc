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

// Word-level HotFlip: pick the flip with the largest first-order loss gain
// grad_i . (e(w') - e(w_i)).

#include "attackers/common.h"

namespace advforge::internal {
namespace {

class HotFlip final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{"hotflip",
                                    {Accessibility::kGradient},
                                    {Perturbation::kWord, Perturbation::kChar}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "hotflip");
    RequireEmbeddings(res, "hotflip");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const AttackConfig& cfg = ctx.config();
    const int y = ctx.label();
    const GradientSpace space(ctx.access().victim(), res.embeddings.get());

    const std::vector<std::string> original = Surfaces(sample);
    std::vector<std::vector<SubstitutionCandidate>> candidates(original.size());
    std::vector<bool> open(original.size(), false);
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (!IsContentToken(sample.tokens[i], *res.pipeline)) continue;
      candidates[i] = NeighborCandidates(res, original[i], sample.tokens[i].pos,
                                         cfg.neighbors, cfg.min_cos);
      open[i] = !candidates[i].empty();
    }

    std::vector<std::string> current = original;
    while (true) {
      const GradientOutput grad = ctx.access().GetGrad(Detokenize(current), y);
      if (grad.grads.rows() != current.size()) return std::nullopt;

      std::optional<std::size_t> best_i;
      std::string best_word;
      double best_gain = 0.0;
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (!open[i]) continue;
        const Vector here = space.Embed(current[i]);
        for (const SubstitutionCandidate& c : candidates[i]) {
          const Vector there = space.Embed(c.replacement);
          double gain = 0.0;
          for (std::size_t d = 0; d < here.size(); ++d) {
            gain += grad.grads(i, d) * (there[d] - here[d]);
          }
          // Strict comparison keeps the lowest position, then the earliest
          // candidate; ties inside a position fall back to the word itself.
          if (!best_i || gain > best_gain ||
              (gain == best_gain && i == *best_i &&
               c.replacement < best_word)) {
            best_i = i;
            best_word = c.replacement;
            best_gain = gain;
          }
        }
      }
      ctx.TraceValue("gain", best_i ? best_gain : 0.0);
      if (!best_i || best_gain <= 0.0) return std::nullopt;

      current[*best_i] = best_word;
      open[*best_i] = false;
      const std::string text = Detokenize(current);
      ctx.TraceText(text);
      if (ctx.Prob(text).predicted != y) return text;
    }
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeHotFlip() { return std::make_unique<HotFlip>(); }

}  // namespace advforge::internal
