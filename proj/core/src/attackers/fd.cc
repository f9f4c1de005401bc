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

// Fast-gradient-sign word substitution (Papernot et al.): step each word's
// embedding along sign(grad) and snap to the nearest candidate word.

#include <algorithm>
#include <numeric>

#include "attackers/common.h"

namespace advforge::internal {
namespace {

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

class Fd final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "fd", {Accessibility::kGradient}, {Perturbation::kWord}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "fd");
    RequireEmbeddings(res, "fd");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const AttackConfig& cfg = ctx.config();
    const int y = ctx.label();
    const GradientSpace space(ctx.access().victim(), res.embeddings.get());
    const std::vector<std::string> original = Surfaces(sample);

    const GradientOutput grad = ctx.access().GetGrad(sample.text, y);
    if (grad.grads.rows() != original.size()) return std::nullopt;

    std::vector<std::size_t> positions;
    std::vector<double> norms(original.size(), 0.0);
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (!IsContentToken(sample.tokens[i], *res.pipeline)) continue;
      norms[i] = Norm2(grad.grads.row(i));
      // A zero gradient gives no direction to move in.
      if (norms[i] > 0.0) positions.push_back(i);
    }
    std::stable_sort(positions.begin(), positions.end(),
                     [&](std::size_t a, std::size_t b) {
                       return norms[a] > norms[b];
                     });

    std::vector<std::string> current = original;
    double current_p = TrueProb(*ctx.original_output(), y);
    for (std::size_t i : positions) {
      const std::vector<SubstitutionCandidate> candidates = NeighborCandidates(
          res, original[i], sample.tokens[i].pos, cfg.neighbors, cfg.min_cos);
      if (candidates.empty()) continue;

      Vector target = space.Embed(original[i]);
      for (std::size_t d = 0; d < target.size(); ++d) {
        target[d] += cfg.fd_epsilon * Sign(grad.grads(i, d));
      }
      const std::string* nearest = nullptr;
      double nearest_dist = 0.0;
      for (const SubstitutionCandidate& c : candidates) {
        const Vector e = space.Embed(c.replacement);
        double dist = 0.0;
        for (std::size_t d = 0; d < e.size(); ++d) {
          dist += (e[d] - target[d]) * (e[d] - target[d]);
        }
        if (nearest == nullptr || dist < nearest_dist ||
            (dist == nearest_dist && c.replacement < *nearest)) {
          nearest = &c.replacement;
          nearest_dist = dist;
        }
      }

      const std::string text = TextWith(current, i, *nearest);
      const VictimOutput out = ctx.Prob(text);
      if (out.predicted != y) {
        ctx.TraceText(text);
        return text;
      }
      if (TrueProb(out, y) < current_p) {
        current[i] = *nearest;
        current_p = TrueProb(out, y);
        ctx.TraceText(text);
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeFd() { return std::make_unique<Fd>(); }

}  // namespace advforge::internal
