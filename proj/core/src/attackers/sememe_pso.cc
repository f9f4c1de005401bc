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

// Discrete particle swarm over sememe-substitution spaces (Zang et al.
// style). A particle is one concrete sentence; its velocity holds one move
// propensity per position.

#include <algorithm>
#include <cmath>
#include <map>

#include "advforge/error.h"
#include "attackers/common.h"

namespace advforge::internal {
namespace {

using Words = std::vector<std::string>;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Linear schedule from `hi` at t = 0 to `lo` at t = T-1, endpoints exact.
double Schedule(double hi, double lo, std::size_t t, std::size_t iterations) {
  if (t == 0 || iterations <= 1) return hi;
  if (t + 1 >= iterations) return lo;
  const double frac =
      static_cast<double>(t) / static_cast<double>(iterations - 1);
  return hi - (hi - lo) * frac;
}

class SememePso final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "sememe-pso", {Accessibility::kScore}, {Perturbation::kWord}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "sememe-pso");
    if (!res.sememes) throw ConfigError("sememe-pso needs a sememe inventory");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const AttackConfig& cfg = ctx.config();
    const int y = ctx.label();
    std::mt19937_64& rng = ctx.rng();
    const Words original = Surfaces(sample);

    std::vector<std::size_t> positions;
    std::vector<std::vector<std::string>> space(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (!IsContentToken(sample.tokens[i], *res.pipeline)) continue;
      for (const SubstitutionCandidate& c : SememeSubstitutes(
               Lower(original[i]), sample.tokens[i].pos, *res.sememes)) {
        space[i].push_back(c.replacement);
      }
      if (!space[i].empty()) positions.push_back(i);
    }
    if (positions.empty() || cfg.particles == 0) return std::nullopt;

    std::map<std::string, VictimOutput> cache;
    auto evaluate = [&](const std::vector<Words>& swarm) {
      std::vector<std::string> texts;
      std::vector<std::string> missing;
      for (const Words& w : swarm) {
        texts.push_back(Detokenize(w));
        if (!cache.contains(texts.back()) &&
            std::find(missing.begin(), missing.end(), texts.back()) ==
                missing.end()) {
          missing.push_back(texts.back());
        }
      }
      const std::vector<VictimOutput> outs = ctx.ProbAll(missing);
      for (std::size_t i = 0; i < missing.size(); ++i) {
        cache.emplace(missing[i], outs[i]);
      }
      return texts;
    };
    auto fitness = [&](const std::string& text) {
      return 1.0 - TrueProb(cache.at(text), y);
    };
    auto best_flip = [&](const std::vector<std::string>& texts)
        -> std::optional<std::string> {
      std::optional<std::size_t> best;
      for (std::size_t k = 0; k < texts.size(); ++k) {
        if (cache.at(texts[k]).predicted == y) continue;
        if (!best || fitness(texts[k]) > fitness(texts[*best])) best = k;
      }
      if (!best) return std::nullopt;
      return texts[*best];
    };

    // Initialization: enumerate single substitutions when they fit in the
    // swarm, otherwise draw one random substitution per particle.
    std::size_t single_variants = 0;
    for (std::size_t i : positions) single_variants += space[i].size();
    std::vector<Words> swarm;
    if (single_variants <= cfg.particles) {
      for (std::size_t i : positions) {
        for (const std::string& w : space[i]) {
          swarm.push_back(original);
          swarm.back()[i] = w;
        }
      }
    } else {
      for (std::size_t n = 0; n < cfg.particles; ++n) {
        const std::size_t i = positions[UniformIndex(rng, positions.size())];
        swarm.push_back(original);
        swarm.back()[i] = space[i][UniformIndex(rng, space[i].size())];
      }
    }
    std::vector<std::string> texts = evaluate(swarm);
    if (auto hit = best_flip(texts)) return hit;
    // A single position has no combinations left to explore.
    if (positions.size() == 1 && single_variants <= cfg.particles) {
      return std::nullopt;
    }

    std::vector<Words> pbest = swarm;
    std::vector<double> pbest_fit(swarm.size());
    std::size_t g = 0;
    for (std::size_t k = 0; k < swarm.size(); ++k) {
      pbest_fit[k] = fitness(texts[k]);
      if (pbest_fit[k] > pbest_fit[g]) g = k;
    }
    Words gbest = pbest[g];
    double gbest_fit = pbest_fit[g];

    std::vector<std::vector<double>> velocity(
        swarm.size(), std::vector<double>(original.size(), 0.0));
    for (auto& v : velocity) {
      for (std::size_t d : positions) v[d] = 2.0 * Uniform01(rng) - 1.0;
    }

    const std::size_t iterations = cfg.pso_iterations;
    for (std::size_t t = 0; t < iterations; ++t) {
      const double omega = Schedule(cfg.omega_max, cfg.omega_min, t, iterations);
      // Turn probabilities shift weight from the particle's own best to the
      // global best over the run.
      const double p_local = omega;
      const double p_global = cfg.omega_max + cfg.omega_min - omega;
      ctx.TraceValue("omega", omega);

      for (std::size_t k = 0; k < swarm.size(); ++k) {
        Words& x = swarm[k];
        for (std::size_t d : positions) {
          const double toward_p = pbest[k][d] == x[d] ? 1.0 : -1.0;
          const double toward_g = gbest[d] == x[d] ? 1.0 : -1.0;
          velocity[k][d] =
              omega * velocity[k][d] + (1.0 - omega) * (toward_p + toward_g);
        }
        if (Uniform01(rng) < p_local) {
          for (std::size_t d : positions) {
            if (Uniform01(rng) < Sigmoid(velocity[k][d])) x[d] = pbest[k][d];
          }
        }
        if (Uniform01(rng) < p_global) {
          for (std::size_t d : positions) {
            if (Uniform01(rng) < Sigmoid(velocity[k][d])) x[d] = gbest[d];
          }
        }
        if (Uniform01(rng) < cfg.mutation) {
          const std::size_t d = positions[UniformIndex(rng, positions.size())];
          x[d] = space[d][UniformIndex(rng, space[d].size())];
        }
      }

      texts = evaluate(swarm);
      if (auto hit = best_flip(texts)) return hit;
      for (std::size_t k = 0; k < swarm.size(); ++k) {
        const double f = fitness(texts[k]);
        if (f > pbest_fit[k]) {
          pbest_fit[k] = f;
          pbest[k] = swarm[k];
        }
        if (f > gbest_fit) {
          gbest_fit = f;
          gbest = swarm[k];
        }
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeSememePso() {
  return std::make_unique<SememePso>();
}

}  // namespace advforge::internal
