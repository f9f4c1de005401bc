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

// DeepWordBug: score tokens, then apply one random character edit to each of
// the top-m tokens while the total edit distance stays within the cap.

#include <algorithm>
#include <numeric>

#include "advforge/utf8.h"
#include "attackers/common.h"

namespace advforge::internal {
namespace {

enum class CharOp { kSwap, kKeyboard, kDelete, kInsert };

std::string RandomCharEdit(const std::string& word, const CharMap* keyboard,
                           std::mt19937_64& rng) {
  std::u32string w = utf8::ToU32(word);
  const std::size_t n = w.size();
  std::vector<std::size_t> keyed;
  if (keyboard != nullptr) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!KeyboardCharSubstitutes(*keyboard, w[j]).empty()) keyed.push_back(j);
    }
  }
  std::vector<CharOp> ops;
  if (n >= 2) ops.push_back(CharOp::kSwap);
  if (!keyed.empty()) ops.push_back(CharOp::kKeyboard);
  if (n >= 2) ops.push_back(CharOp::kDelete);
  ops.push_back(CharOp::kInsert);

  switch (ops[UniformIndex(rng, ops.size())]) {
    case CharOp::kSwap: {
      const std::size_t j = UniformIndex(rng, n - 1);
      std::swap(w[j], w[j + 1]);
      break;
    }
    case CharOp::kKeyboard: {
      const std::size_t j = keyed[UniformIndex(rng, keyed.size())];
      const auto subs = KeyboardCharSubstitutes(*keyboard, w[j]);
      w.replace(j, 1, utf8::ToU32(subs[UniformIndex(rng, subs.size())].replacement));
      break;
    }
    case CharOp::kDelete:
      w.erase(UniformIndex(rng, n), 1);
      break;
    case CharOp::kInsert: {
      const std::size_t j = UniformIndex(rng, n + 1);
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(j),
               static_cast<char32_t>(U'a' + UniformIndex(rng, 26)));
      break;
    }
  }
  return utf8::FromU32(w);
}

class DeepWordBug final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{
        "deepwordbug", {Accessibility::kScore}, {Perturbation::kChar}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    (void)res;
  }

  std::optional<std::string> Search(AttackContext& ctx) const override {
    const Sample& sample = ctx.sample();
    const AttackConfig& cfg = ctx.config();
    const int y = ctx.label();
    if (cfg.max_edits == 0 || cfg.wordbug_top_m == 0) return std::nullopt;

    const std::vector<std::string> original = Surfaces(sample);
    // Stopwords are scored like any other token.
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (!IsPunctuationToken(original[i])) positions.push_back(i);
    }
    if (positions.empty()) return std::nullopt;

    const std::vector<double> scores = Score(ctx, original, positions);
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return scores[a] > scores[b];
    });
    order.resize(std::min(order.size(), cfg.wordbug_top_m));

    std::vector<std::string> current = original;
    for (std::size_t j : order) {
      const std::size_t i = positions[j];
      const std::string edited =
          RandomCharEdit(current[i], ctx.resources().keyboard.get(), ctx.rng());
      const std::string text = TextWith(current, i, edited);
      if (Levenshtein(sample.text, text) > cfg.max_edits) continue;
      current[i] = edited;
      ctx.TraceText(text);
      if (ctx.Prob(text).predicted != y) return text;
    }
    return std::nullopt;
  }

 private:
  static std::vector<double> Score(AttackContext& ctx,
                                   const std::vector<std::string>& tokens,
                                   const std::vector<std::size_t>& positions) {
    const int y = ctx.label();
    const double p0 = TrueProb(*ctx.original_output(), y);
    const std::size_t n = tokens.size();
    std::vector<double> out(positions.size(), 0.0);

    if (ctx.config().wordbug_scorer == WordBugScorer::kReplaceOne) {
      std::vector<std::string> probes;
      for (std::size_t i : positions) {
        probes.push_back(TextWith(tokens, i, ctx.config().unk));
      }
      const auto outs = ctx.ProbAll(probes);
      for (std::size_t j = 0; j < positions.size(); ++j) {
        out[j] = p0 - TrueProb(outs[j], y);
      }
      return out;
    }

    const bool head = ctx.config().wordbug_scorer != WordBugScorer::kTemporalTail;
    const bool tail = ctx.config().wordbug_scorer != WordBugScorer::kTemporalHead;
    auto join = [&](std::size_t lo, std::size_t hi) {
      return Detokenize(std::span<const std::string>(tokens).subspan(lo, hi - lo));
    };
    // prefix[k] = F(x_1..x_k), suffix[k] = F(x_{k+1}..x_n).
    std::vector<double> prefix(n + 1, p0);
    std::vector<double> suffix(n + 1, p0);
    if (head) {
      std::vector<std::string> probes;
      for (std::size_t k = 0; k < n; ++k) probes.push_back(join(0, k));
      const auto outs = ctx.ProbAll(probes);
      for (std::size_t k = 0; k < n; ++k) prefix[k] = TrueProb(outs[k], y);
    }
    if (tail) {
      std::vector<std::string> probes;
      for (std::size_t k = 1; k <= n; ++k) probes.push_back(join(k, n));
      const auto outs = ctx.ProbAll(probes);
      for (std::size_t k = 1; k <= n; ++k) suffix[k] = TrueProb(outs[k - 1], y);
    }
    for (std::size_t j = 0; j < positions.size(); ++j) {
      const std::size_t i = positions[j];
      if (head) out[j] += prefix[i + 1] - prefix[i];
      if (tail) out[j] += suffix[i] - suffix[i + 1];
    }
    return out;
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeDeepWordBug() {
  return std::make_unique<DeepWordBug>();
}

}  // namespace advforge::internal
