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

#ifndef ADVFORGE_SRC_ATTACKERS_COMMON_H_
#define ADVFORGE_SRC_ATTACKERS_COMMON_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advforge/attack.h"

namespace advforge::internal {

// Portable draws: the standard distributions are implementation-defined,
// which would tie results to one standard library.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n);
double Uniform01(std::mt19937_64& rng);

std::vector<std::string> Surfaces(const Sample& sample);
std::string Lower(std::string_view s);

// Not punctuation and not a stopword.
bool IsContentToken(const Token& token, const LanguagePipeline& pipeline);

std::string TextWith(std::span<const std::string> tokens, std::size_t index,
                     const std::string& replacement);
std::string TextWithout(std::span<const std::string> tokens, std::size_t index);

// Probability of the gold label.
inline double TrueProb(const VictimOutput& out, int label) {
  return out.probabilities[static_cast<std::size_t>(label)];
}

// Embedding-neighbor candidates of `word`, optionally restricted to words the
// pipeline tags with `pos`.
std::vector<SubstitutionCandidate> NeighborCandidates(
    const AttackResources& res, std::string_view word, std::optional<Pos> pos,
    std::size_t k, double min_cos);

// The space gradient attackers measure token moves in: the victim's own
// input embedding when exposed, otherwise the shared table when its width
// matches the victim's.
class GradientSpace {
 public:
  GradientSpace(const Victim& victim, const EmbeddingTable* table);

  // Zero vector for words the space does not know.
  Vector Embed(std::string_view word) const;
  std::size_t dim() const { return dim_; }

 private:
  const Victim& victim_;
  const EmbeddingTable* table_;
  bool use_victim_;
  std::size_t dim_;
};

// TextBugger's candidate bugs for `word` in generation order: insert space,
// delete an inner char, swap inner chars, visual char, neighbor word.
std::vector<std::string> GenerateBugs(const std::string& word,
                                      const AttackResources& res,
                                      double min_cos, std::mt19937_64& rng);

void RequirePipeline(const AttackResources& res, std::string_view who);
void RequireEmbeddings(const AttackResources& res, std::string_view who);

std::unique_ptr<Attacker> MakeTextFooler();
std::unique_ptr<Attacker> MakePwws();
std::unique_ptr<Attacker> MakeGenetic();
std::unique_ptr<Attacker> MakeSememePso();
std::unique_ptr<Attacker> MakeHotFlip();
std::unique_ptr<Attacker> MakeFd();
std::unique_ptr<Attacker> MakeUat();
std::unique_ptr<Attacker> MakeTextBugger();
std::unique_ptr<Attacker> MakeDeepWordBug();
std::unique_ptr<Attacker> MakeViper();
std::unique_ptr<Attacker> MakeSeaRules();

}  // namespace advforge::internal

#endif  // ADVFORGE_SRC_ATTACKERS_COMMON_H_
