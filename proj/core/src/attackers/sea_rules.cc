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

// Semantically equivalent adversarial rules: try each rule rewrite in order,
// looking only at predicted labels.

#include "advforge/error.h"
#include "attackers/common.h"

namespace advforge::internal {
namespace {

class SeaRules final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "sea-rules", {Accessibility::kDecision}, {Perturbation::kSentence}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    if (!res.rules) throw ConfigError("sea-rules needs a paraphrase rule file");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const std::vector<std::string> tokens = Surfaces(sample);
    for (const std::vector<std::string>& candidate :
         ApplyParaphraseRules(tokens, *ctx.resources().rules)) {
      const std::string text = Detokenize(candidate);
      if (text == sample.text) continue;
      ctx.TraceText(text);
      if (ctx.access().GetPred(text) != ctx.label()) return text;
    }
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeSeaRules() { return std::make_unique<SeaRules>(); }

}  // namespace advforge::internal
