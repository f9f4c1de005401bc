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

#ifndef ADVFORGE_METRICS_H_
#define ADVFORGE_METRICS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "advforge/embedding.h"
#include "advforge/error.h"
#include "advforge/text.h"

namespace advforge {

class EmptyOriginal : public MetricError {
 public:
  EmptyOriginal() : MetricError("original token sequence is empty") {}
};

class EmptyCandidate : public MetricError {
 public:
  EmptyCandidate() : MetricError("candidate token sequence is empty") {}
};

class EmptyText : public MetricError {
 public:
  EmptyText() : MetricError("text has no tokens") {}
};

class IndexOutOfRange : public MetricError {
 public:
  using MetricError::MetricError;
};

enum class Orientation { kHigherBetter, kLowerBetter };

// Metric ids used in reports and summaries.
namespace metric_id {
inline constexpr std::string_view kAttackSuccessRate = "asr";
inline constexpr std::string_view kModificationRate = "modification_rate";
inline constexpr std::string_view kLevenshtein = "levenshtein";
inline constexpr std::string_view kJaccardChar = "jaccard_char";
inline constexpr std::string_view kJaccardWord = "jaccard_word";
inline constexpr std::string_view kBleu = "bleu";
inline constexpr std::string_view kSemanticSimilarity = "semantic_similarity";
inline constexpr std::string_view kFluency = "fluency";
inline constexpr std::string_view kGrammaticality = "grammaticality";
inline constexpr std::string_view kQueries = "queries";
inline constexpr std::string_view kTime = "time";
}  // namespace metric_id

// The per-example quality metrics in reporting order.
std::span<const std::string_view> QualityMetricIds();

// nullopt for unknown ids.
std::optional<Orientation> MetricOrientation(std::string_view id);
std::string_view OrientationArrow(Orientation o);

struct MetricValue {
  std::string id;
  double value = 0.0;
  Orientation orientation = Orientation::kHigherBetter;
};

// Builds a value with the canonical orientation for `id`. Throws
// MetricError for unknown ids.
MetricValue MakeMetricValue(std::string_view id, double value);
// Throws MetricError when `v.orientation` disagrees with the canonical one.
void CheckOrientation(const MetricValue& v);

// Token edit operations (substitutions + insertions + deletions) divided by
// the original length. Throws EmptyOriginal.
double WordModificationRate(std::span<const std::string> original,
                            std::span<const std::string> adversarial);

// Unit-cost edit distance over Unicode scalar values.
std::size_t Levenshtein(std::string_view a, std::string_view b);

// |A n B| / |A u B| over character sets; 1.0 when both are empty.
double JaccardChar(std::string_view a, std::string_view b);
// Same over lower-cased word sets.
double JaccardWord(std::string_view a, std::string_view b);

// Sentence BLEU up to 4-grams (capped at the candidate length) with brevity
// penalty. A zero n-gram match count is replaced by 1 / (2 * candidate
// n-gram count). Throws EmptyCandidate.
double Bleu(std::span<const std::string> candidate,
            std::span<const std::string> reference);

// Cosine of stopword-filtered mean word vectors; 0.0 when either side has
// no in-vocabulary word.
double SemanticSimilarity(std::string_view a, std::string_view b,
                          const EmbeddingTable& embeddings,
                          const LanguagePipeline* pipeline = nullptr);

// Word n-gram model with add-k smoothing and sentence padding. The
// vocabulary always contains the end marker and <unk>.
class NGramLM {
 public:
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  static constexpr std::string_view kUnk = "<unk>";

  NGramLM() = default;

  // Counts every n-gram of order `order` in the padded sentences. Tokens are
  // lower-cased.
  static NGramLM Train(std::span<const std::vector<std::string>> sentences,
                       int order = 3, double add_k = 0.01);

  // Direct construction from full-order n-gram counts (context tokens then
  // predicted token). `vocabulary` gains </s> and <unk> if missing.
  NGramLM(int order, double add_k, std::vector<std::string> vocabulary,
          std::vector<std::pair<std::vector<std::string>, std::uint64_t>>
              counts);

  static NGramLM Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;
  std::string Serialize() const;

  int order() const { return order_; }
  double add_k() const { return add_k_; }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

  // log p(word | context); only the last order-1 context tokens matter and
  // missing positions are <s>.
  double LogProb(std::span<const std::string> context,
                 std::string_view word) const;

 private:
  std::string Normalize(std::string_view word) const;
  std::string ContextKey(std::span<const std::string> context) const;

  int order_ = 3;
  double add_k_ = 0.01;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> vocab_index_;
  // Keys join tokens with '\x1f'.
  std::unordered_map<std::string, std::uint64_t> ngram_counts_;
  std::unordered_map<std::string, std::uint64_t> context_counts_;
  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> raw_counts_;
};

// exp(-mean log p) over the tokens plus the end marker. Throws EmptyText.
double FluencyPerplexity(std::string_view text, const NGramLM& lm);

// log p(tokens[index] | preceding tokens). Throws IndexOutOfRange.
double LmWordScore(std::span<const std::string> tokens, std::size_t index,
                   const NGramLM& lm);

// HTTP client for out-of-process quality metrics:
//   POST /similarity {"a","b"} -> {"score"}
//   POST /perplexity {"text"}  -> {"score"}
//   POST /check      {"text"}  -> {"errors"}
// Every failure surfaces as ProviderUnavailable naming the endpoint.
class RemoteMetricProvider {
 public:
  explicit RemoteMetricProvider(
      std::string endpoint,
      std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

  double Similarity(const std::string& a, const std::string& b) const;
  double Perplexity(const std::string& text) const;
  std::size_t GrammarErrors(const std::string& text) const;

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

// Grammatical error count from `provider`; ProviderUnavailable when null.
std::size_t Grammaticality(const std::string& text,
                           const RemoteMetricProvider* provider);

}  // namespace advforge

#endif  // ADVFORGE_METRICS_H_
