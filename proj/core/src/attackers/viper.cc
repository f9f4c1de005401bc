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

// VIPER: random visual look-alike substitution. Uses nothing from the
// victim; the driver's verification is its only query.

#include "advforge/error.h"
#include "advforge/utf8.h"
#include "attackers/common.h"

namespace advforge::internal {
namespace {

class Viper final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "viper", {Accessibility::kBlind}, {Perturbation::kChar}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    if (!res.visual) throw ConfigError("viper needs a visual char map");
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const AttackConfig& cfg = ctx.config();
    std::u32string text = utf8::ToU32(ctx.sample().text);
    std::u32string out;
    for (char32_t ch : text) {
      if (!utf8::IsAsciiAlnum(ch) || Uniform01(ctx.rng()) >= cfg.viper_p) {
        out.push_back(ch);
        continue;
      }
      const std::vector<SubstitutionCandidate> subs =
          VisualCharSubstitutes(*ctx.resources().visual, ch, cfg.viper_k);
      if (subs.empty()) {
        out.push_back(ch);
        continue;
      }
      out += utf8::ToU32(subs[UniformIndex(ctx.rng(), subs.size())].replacement);
    }
    return utf8::FromU32(out);
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeViper() { return std::make_unique<Viper>(); }

}  // namespace advforge::internal
