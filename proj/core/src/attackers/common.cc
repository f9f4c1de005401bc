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

#include "attackers/common.h"

#include <algorithm>

#include "advforge/error.h"
#include "advforge/utf8.h"

namespace advforge::internal {

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  if (n <= 1) return 0;
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % range);
}

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::string> Surfaces(const Sample& sample) {
  std::vector<std::string> out;
  out.reserve(sample.tokens.size());
  for (const Token& t : sample.tokens) out.push_back(t.surface);
  return out;
}

std::string Lower(std::string_view s) { return utf8::AsciiLower(s); }

bool IsContentToken(const Token& token, const LanguagePipeline& pipeline) {
  return !IsPunctuationToken(token.surface) &&
         !pipeline.IsStopword(Lower(token.surface));
}

std::string TextWith(std::span<const std::string> tokens, std::size_t index,
                     const std::string& replacement) {
  std::vector<std::string> copy(tokens.begin(), tokens.end());
  copy[index] = replacement;
  return Detokenize(copy);
}

std::string TextWithout(std::span<const std::string> tokens,
                        std::size_t index) {
  std::vector<std::string> copy;
  copy.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != index) copy.push_back(tokens[i]);
  }
  return Detokenize(copy);
}

std::vector<SubstitutionCandidate> NeighborCandidates(
    const AttackResources& res, std::string_view word, std::optional<Pos> pos,
    std::size_t k, double min_cos) {
  std::vector<SubstitutionCandidate> raw =
      EmbeddingNeighbors(*res.embeddings, Lower(word), k, min_cos);
  if (!pos) return raw;
  std::vector<SubstitutionCandidate> out;
  for (SubstitutionCandidate& c : raw) {
    if (res.pipeline->Tag(c.replacement) == *pos) out.push_back(std::move(c));
  }
  return out;
}

GradientSpace::GradientSpace(const Victim& victim, const EmbeddingTable* table)
    : victim_(victim), table_(table), use_victim_(false), dim_(0) {
  if (const auto probe = victim.Embedding("the")) {
    use_victim_ = true;
    dim_ = probe->size();
    return;
  }
  const auto victim_dim = victim.embed_dim();
  if (table != nullptr && victim_dim && *victim_dim == table->dim()) {
    dim_ = table->dim();
    return;
  }
  throw IncompatibleAttacker(
      "victim '" + victim.name() +
      "' exposes no input embedding and its gradient width does not match "
      "the embedding table");
}

Vector GradientSpace::Embed(std::string_view word) const {
  if (use_victim_) {
    if (auto v = victim_.Embedding(word)) return *v;
    return Vector(dim_, 0.0);
  }
  if (const auto row = table_->Find(word)) {
    return Vector(row->begin(), row->end());
  }
  return Vector(dim_, 0.0);
}

void RequirePipeline(const AttackResources& res, std::string_view who) {
  if (!res.pipeline) {
    throw ConfigError(std::string(who) + " needs a language pipeline");
  }
}

void RequireEmbeddings(const AttackResources& res, std::string_view who) {
  if (!res.embeddings) {
    throw ConfigError(std::string(who) + " needs an embedding table");
  }
}

}  // namespace advforge::internal
