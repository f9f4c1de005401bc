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

// TextBugger: five candidate bugs per important word, keep the one that
// hurts the gold label most.

#include <algorithm>

#include "advforge/error.h"
#include "advforge/utf8.h"
#include "attackers/common.h"

namespace advforge::internal {

std::vector<std::string> GenerateBugs(const std::string& word,
                                      const AttackResources& res,
                                      double min_cos, std::mt19937_64& rng) {
  const std::u32string w = utf8::ToU32(word);
  const std::size_t n = w.size();
  std::vector<std::string> bugs;
  auto add = [&](std::string b) {
    if (b != word && std::find(bugs.begin(), bugs.end(), b) == bugs.end()) {
      bugs.push_back(std::move(b));
    }
  };
  if (n >= 2) {
    const std::size_t m = 1 + UniformIndex(rng, n - 1);
    add(utf8::FromU32(w.substr(0, m)) + " " + utf8::FromU32(w.substr(m)));
  }
  if (n >= 3) {
    const std::size_t j = 1 + UniformIndex(rng, n - 2);
    std::u32string d = w;
    d.erase(j, 1);
    add(utf8::FromU32(d));
  }
  if (n >= 4) {
    const std::size_t j = 1 + UniformIndex(rng, n - 3);
    std::u32string s = w;
    std::swap(s[j], s[j + 1]);
    add(utf8::FromU32(s));
  }
  if (n >= 2 && res.visual) {
    std::vector<std::size_t> mapped;
    for (std::size_t j = 0; j < n; ++j) {
      if (!VisualCharSubstitutes(*res.visual, w[j], 1).empty()) mapped.push_back(j);
    }
    if (!mapped.empty()) {
      const std::size_t j = mapped[UniformIndex(rng, mapped.size())];
      std::u32string v = w;
      const std::u32string sub = utf8::ToU32(
          VisualCharSubstitutes(*res.visual, w[j], 1).front().replacement);
      v.replace(j, 1, sub);
      add(utf8::FromU32(v));
    }
  }
  const auto neighbors = NeighborCandidates(res, word, std::nullopt, 1, min_cos);
  if (!neighbors.empty()) add(neighbors.front().replacement);
  return bugs;
}

namespace {

class TextBugger final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "textbugger",
        {Accessibility::kGradient, Accessibility::kScore},
        {Perturbation::kWord, Perturbation::kChar}};
    return kInfo;
  }

  Accessibility Mode(const Victim& victim,
                     const AttackConfig& config) const override {
    switch (config.textbugger_mode) {
      case TextBuggerMode::kWhiteBox:
        return Accessibility::kGradient;
      case TextBuggerMode::kBlackBox:
        return Accessibility::kScore;
      case TextBuggerMode::kAuto:
        break;
    }
    return victim.supports_gradient() ? Accessibility::kGradient
                                      : Accessibility::kScore;
  }

  void CheckResources(const AttackResources& res) const override {
    RequirePipeline(res, "textbugger");
    RequireEmbeddings(res, "textbugger");
    if (!res.visual) throw ConfigError("textbugger needs a visual char map");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackResources& res = ctx.resources();
    const int y = ctx.label();
    const std::vector<std::string> original = Surfaces(sample);

    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (IsContentToken(sample.tokens[i], *res.pipeline)) positions.push_back(i);
    }
    if (positions.empty()) return std::nullopt;

    const double p0 = TrueProb(*ctx.original_output(), y);
    std::vector<double> importance(original.size(), 0.0);
    if (ctx.access().policy().grad) {
      const GradientOutput grad = ctx.access().GetGrad(sample.text, y);
      if (grad.grads.rows() != original.size()) return std::nullopt;
      for (std::size_t i : positions) importance[i] = Norm2(grad.grads.row(i));
    } else {
      std::vector<std::string> probes;
      for (std::size_t i : positions) probes.push_back(TextWithout(original, i));
      const std::vector<VictimOutput> outs = ctx.ProbAll(probes);
      for (std::size_t j = 0; j < positions.size(); ++j) {
        importance[positions[j]] = p0 - TrueProb(outs[j], y);
      }
    }
    std::stable_sort(positions.begin(), positions.end(),
                     [&](std::size_t a, std::size_t b) {
                       return importance[a] > importance[b];
                     });

    std::vector<std::string> current = original;
    double current_p = p0;
    for (std::size_t i : positions) {
      const std::vector<std::string> bugs =
          GenerateBugs(original[i], res, ctx.config().min_cos, ctx.rng());
      if (bugs.empty()) continue;
      std::vector<std::string> texts;
      for (const std::string& b : bugs) texts.push_back(TextWith(current, i, b));
      const std::vector<VictimOutput> outs = ctx.ProbAll(texts);

      std::size_t best = 0;
      std::optional<std::size_t> best_flip;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        const double p = TrueProb(outs[k], y);
        if (p < TrueProb(outs[best], y)) best = k;
        if (outs[k].predicted != y &&
            (!best_flip || p < TrueProb(outs[*best_flip], y))) {
          best_flip = k;
        }
      }
      ctx.TraceValue("best_bug_prob", TrueProb(outs[best], y));
      if (best_flip) {
        ctx.TraceText(texts[*best_flip]);
        return texts[*best_flip];
      }
      if (TrueProb(outs[best], y) < current_p) {
        current[i] = bugs[best];
        current_p = TrueProb(outs[best], y);
        ctx.TraceText(texts[best]);
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeTextBugger() {
  return std::make_unique<TextBugger>();
}

}  // namespace advforge::internal
