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

#include "advforge/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "advforge/utf8.h"
#include "http_client.h"
#include "json.hpp"

namespace advforge {

namespace {

constexpr std::array<std::string_view, 8> kQualityIds = {
    metric_id::kModificationRate,  metric_id::kLevenshtein,
    metric_id::kJaccardChar,       metric_id::kJaccardWord,
    metric_id::kBleu,              metric_id::kSemanticSimilarity,
    metric_id::kFluency,           metric_id::kGrammaticality};

template <typename T>
std::size_t EditDistance(std::span<const T> a, std::span<const T> b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename T>
double Jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const T& x : a) inter += b.contains(x) ? 1 : 0;
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::string> LowerWords(std::string_view text) {
  std::vector<std::string> words = SplitWords(text);
  for (std::string& w : words) w = utf8::AsciiLower(w);
  return words;
}

}  // namespace

std::span<const std::string_view> QualityMetricIds() { return kQualityIds; }

std::optional<Orientation> MetricOrientation(std::string_view id) {
  using enum Orientation;
  static const std::map<std::string_view, Orientation> kTable = {
      {metric_id::kAttackSuccessRate, kHigherBetter},
      {metric_id::kModificationRate, kLowerBetter},
      // Formal similarity: the distance form is lower-better, the
      // overlap forms higher-better.
      {metric_id::kLevenshtein, kLowerBetter},
      {metric_id::kJaccardChar, kHigherBetter},
      {metric_id::kJaccardWord, kHigherBetter},
      {metric_id::kBleu, kHigherBetter},
      {metric_id::kSemanticSimilarity, kHigherBetter},
      {metric_id::kFluency, kLowerBetter},
      {metric_id::kGrammaticality, kLowerBetter},
      {metric_id::kQueries, kLowerBetter},
      {metric_id::kTime, kLowerBetter},
  };
  const auto it = kTable.find(id);
  if (it == kTable.end()) return std::nullopt;
  return it->second;
}

std::string_view OrientationArrow(Orientation o) {
  return o == Orientation::kHigherBetter ? "↑" : "↓";
}

MetricValue MakeMetricValue(std::string_view id, double value) {
  const auto o = MetricOrientation(id);
  if (!o) throw MetricError("unknown metric id '" + std::string(id) + "'");
  return {std::string(id), value, *o};
}

void CheckOrientation(const MetricValue& v) {
  const auto o = MetricOrientation(v.id);
  if (!o) throw MetricError("unknown metric id '" + v.id + "'");
  if (*o != v.orientation) {
    throw MetricError("metric '" + v.id + "' carries the wrong orientation");
  }
}

double WordModificationRate(std::span<const std::string> original,
                            std::span<const std::string> adversarial) {
  if (original.empty()) throw EmptyOriginal();
  return static_cast<double>(EditDistance(original, adversarial)) /
         static_cast<double>(original.size());
}

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  const std::u32string ua = utf8::ToU32(a);
  const std::u32string ub = utf8::ToU32(b);
  return EditDistance(std::span<const char32_t>(ua),
                      std::span<const char32_t>(ub));
}

double JaccardChar(std::string_view a, std::string_view b) {
  const std::u32string ua = utf8::ToU32(a);
  const std::u32string ub = utf8::ToU32(b);
  return Jaccard(std::set<char32_t>(ua.begin(), ua.end()),
                 std::set<char32_t>(ub.begin(), ub.end()));
}

double JaccardWord(std::string_view a, std::string_view b) {
  const auto wa = LowerWords(a);
  const auto wb = LowerWords(b);
  return Jaccard(std::set<std::string>(wa.begin(), wa.end()),
                 std::set<std::string>(wb.begin(), wb.end()));
}

double Bleu(std::span<const std::string> candidate,
            std::span<const std::string> reference) {
  if (candidate.empty()) throw EmptyCandidate();
  const std::size_t max_n = std::min<std::size_t>(4, candidate.size());
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::map<std::vector<std::string>, std::size_t> ref_counts;
    for (std::size_t i = 0; i + n <= reference.size(); ++i) {
      ++ref_counts[{reference.begin() + i, reference.begin() + i + n}];
    }
    std::map<std::vector<std::string>, std::size_t> cand_counts;
    const std::size_t total = candidate.size() - n + 1;
    for (std::size_t i = 0; i < total; ++i) {
      ++cand_counts[{candidate.begin() + i, candidate.begin() + i + n}];
    }
    std::size_t clipped = 0;
    for (const auto& [gram, count] : cand_counts) {
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) clipped += std::min(count, it->second);
    }
    const double precision =
        clipped == 0 ? 1.0 / (2.0 * static_cast<double>(total))
                     : static_cast<double>(clipped) / static_cast<double>(total);
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / static_cast<double>(max_n));
}

double SemanticSimilarity(std::string_view a, std::string_view b,
                          const EmbeddingTable& embeddings,
                          const LanguagePipeline* pipeline) {
  auto mean = [&](std::string_view text) -> std::optional<Vector> {
    Vector m(embeddings.dim(), 0.0);
    std::size_t n = 0;
    for (const std::string& w : LowerWords(text)) {
      if (IsPunctuationToken(w)) continue;
      if (pipeline != nullptr && pipeline->IsStopword(w)) continue;
      const auto row = embeddings.Find(w);
      if (!row) continue;
      for (std::size_t c = 0; c < m.size(); ++c) m[c] += (*row)[c];
      ++n;
    }
    if (n == 0) return std::nullopt;
    return m;
  };
  const auto ma = mean(a);
  const auto mb = mean(b);
  if (!ma || !mb) return 0.0;
  const double na = Norm2(*ma);
  const double nb = Norm2(*mb);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(Dot(*ma, *mb) / (na * nb), -1.0, 1.0);
}

double FluencyPerplexity(std::string_view text, const NGramLM& lm) {
  const std::vector<std::string> words = LowerWords(text);
  if (words.empty()) throw EmptyText();
  double log_sum = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    log_sum += lm.LogProb(std::span(words).first(i), words[i]);
  }
  log_sum += lm.LogProb(words, NGramLM::kEos);
  return std::exp(-log_sum / static_cast<double>(words.size() + 1));
}

double LmWordScore(std::span<const std::string> tokens, std::size_t index,
                   const NGramLM& lm) {
  if (index >= tokens.size()) {
    throw IndexOutOfRange("word index " + std::to_string(index) +
                          " out of range for " + std::to_string(tokens.size()) +
                          " tokens");
  }
  return lm.LogProb(tokens.first(index), tokens[index]);
}

// ---------------------------------------------------------------------------

RemoteMetricProvider::RemoteMetricProvider(std::string endpoint,
                                           std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

namespace {

nlohmann::json CallProvider(const std::string& endpoint, const char* path,
                            const nlohmann::json& body,
                            std::chrono::milliseconds timeout) {
  const std::string url = internal::JoinUrl(endpoint, path);
  internal::HttpResponse res;
  try {
    res = internal::HttpPostJson(url, body.dump(), timeout);
  } catch (const NetworkError& e) {
    throw ProviderUnavailable(e.what());
  }
  if (res.status != 200) {
    throw ProviderUnavailable(url + ": HTTP " + std::to_string(res.status));
  }
  try {
    return nlohmann::json::parse(res.body);
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable(url + ": malformed JSON: " + e.what());
  }
}

template <typename T>
T Extract(const nlohmann::json& j, const char* key, const std::string& url) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable(url + ": bad response: " + e.what());
  }
}

}  // namespace

double RemoteMetricProvider::Similarity(const std::string& a,
                                        const std::string& b) const {
  const auto j =
      CallProvider(endpoint_, "/similarity", {{"a", a}, {"b", b}}, timeout_);
  return Extract<double>(j, "score", internal::JoinUrl(endpoint_, "/similarity"));
}

double RemoteMetricProvider::Perplexity(const std::string& text) const {
  const auto j = CallProvider(endpoint_, "/perplexity", {{"text", text}}, timeout_);
  return Extract<double>(j, "score", internal::JoinUrl(endpoint_, "/perplexity"));
}

std::size_t RemoteMetricProvider::GrammarErrors(const std::string& text) const {
  const auto j = CallProvider(endpoint_, "/check", {{"text", text}}, timeout_);
  return Extract<std::size_t>(j, "errors", internal::JoinUrl(endpoint_, "/check"));
}

std::size_t Grammaticality(const std::string& text,
                           const RemoteMetricProvider* provider) {
  if (provider == nullptr) {
    throw ProviderUnavailable("grammaticality provider not configured");
  }
  return provider->GrammarErrors(text);
}

}  // namespace advforge
