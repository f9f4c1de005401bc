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

// Population-based word substitution (Alzantot et al. style).

#include <algorithm>
#include <map>

#include "advforge/error.h"
#include "attackers/common.h"

namespace advforge::internal {
namespace {

using Words = std::vector<std::string>;

// Victim outputs keyed by text so no sentence is ever scored twice.
class FitnessCache {
 public:
  explicit FitnessCache(AttackContext& ctx) : ctx_(ctx) {}

  std::vector<const VictimOutput*> Evaluate(const std::vector<std::string>& texts) {
    std::vector<std::string> missing;
    for (const std::string& t : texts) {
      if (!cache_.contains(t) &&
          std::find(missing.begin(), missing.end(), t) == missing.end()) {
        missing.push_back(t);
      }
    }
    const std::vector<VictimOutput> outs = ctx_.ProbAll(missing);
    for (std::size_t i = 0; i < missing.size(); ++i) {
      cache_.emplace(missing[i], outs[i]);
    }
    std::vector<const VictimOutput*> result;
    for (const std::string& t : texts) result.push_back(&cache_.at(t));
    return result;
  }

 private:
  AttackContext& ctx_;
  std::map<std::string, VictimOutput> cache_;
};

class Genetic final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "genetic", {Accessibility::kScore}, {Perturbation::kWord}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "genetic");
    RequireEmbeddings(res, "genetic");
    if (!res.lm) throw ConfigError("genetic needs an n-gram language model");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const AttackConfig& cfg = ctx.config();
    const int y = ctx.label();
    const Words original = Surfaces(sample);

    // Substitution space per position, from the original words.
    std::vector<std::size_t> positions;
    std::vector<std::vector<std::string>> space(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (!IsContentToken(sample.tokens[i], *res.pipeline)) continue;
      for (const SubstitutionCandidate& c :
           NeighborCandidates(res, original[i], std::nullopt,
                              cfg.genetic_neighbors, cfg.min_cos)) {
        space[i].push_back(c.replacement);
      }
      if (!space[i].empty()) positions.push_back(i);
    }
    if (positions.empty() || cfg.population == 0) return std::nullopt;

    FitnessCache cache(ctx);
    auto fitness = [y](const VictimOutput& out) { return 1.0 - TrueProb(out, y); };

    auto perturb = [&](const Words& x) -> Words {
      const std::size_t i = positions[UniformIndex(ctx.rng(), positions.size())];
      std::vector<Words> options;
      std::vector<std::string> texts;
      for (const std::string& w : space[i]) {
        Words candidate = x;
        candidate[i] = w;
        if (LmWordScore(candidate, i, *res.lm) < cfg.lm_threshold) continue;
        texts.push_back(Detokenize(candidate));
        options.push_back(std::move(candidate));
      }
      if (options.empty()) return x;
      const auto outs = cache.Evaluate(texts);
      std::size_t best = 0;
      for (std::size_t k = 1; k < outs.size(); ++k) {
        if (fitness(*outs[k]) > fitness(*outs[best])) best = k;
      }
      return options[best];
    };

    std::vector<Words> population;
    for (std::size_t n = 0; n < cfg.population; ++n) {
      population.push_back(perturb(original));
    }

    for (std::size_t g = 0; g < cfg.generations; ++g) {
      std::vector<std::string> texts;
      for (const Words& member : population) texts.push_back(Detokenize(member));
      const auto outs = cache.Evaluate(texts);
      std::vector<double> fit(outs.size());
      std::size_t elite = 0;
      std::optional<std::size_t> best_flip;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        fit[k] = fitness(*outs[k]);
        if (fit[k] > fit[elite]) elite = k;
        if (outs[k]->predicted != y && (!best_flip || fit[k] > fit[*best_flip])) {
          best_flip = k;
        }
      }
      ctx.TraceValue("best_fitness", fit[elite]);
      if (best_flip) {
        ctx.TraceText(texts[*best_flip]);
        return texts[*best_flip];
      }
      if (g + 1 == cfg.generations) break;

      double total = 0.0;
      for (double f : fit) total += f;
      auto pick_parent = [&]() -> std::size_t {
        if (total <= 0.0) return UniformIndex(ctx.rng(), fit.size());
        double r = Uniform01(ctx.rng()) * total;
        for (std::size_t k = 0; k < fit.size(); ++k) {
          r -= fit[k];
          if (r < 0.0) return k;
        }
        return fit.size() - 1;
      };

      std::vector<Words> next;
      next.push_back(population[elite]);
      while (next.size() < cfg.population) {
        const Words& a = population[pick_parent()];
        const Words& b = population[pick_parent()];
        Words child(a.size());
        for (std::size_t i = 0; i < child.size(); ++i) {
          child[i] = Uniform01(ctx.rng()) < 0.5 ? a[i] : b[i];
        }
        next.push_back(perturb(child));
      }
      population = std::move(next);
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeGenetic() { return std::make_unique<Genetic>(); }

}  // namespace advforge::internal
