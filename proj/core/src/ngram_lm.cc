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

// Add-k smoothed n-gram model:
//
//   p(w | h) = (c(h, w) + k) / (c(h) + k |V|)
//
// where c(h) sums c(h, w) over every w, so each conditional distribution is
// normalized over V exactly.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "advforge/metrics.h"
#include "advforge/utf8.h"
#include "json.hpp"
#include "tsv.h"

namespace advforge {

namespace {

constexpr char kSep = '\x1f';
constexpr std::string_view kMagic = "advforge-ngram";
constexpr int kFormatVersion = 1;

std::string Join(std::span<const std::string> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(kSep);
    out += parts[i];
  }
  return out;
}

}  // namespace

NGramLM::NGramLM(
    int order, double add_k, std::vector<std::string> vocabulary,
    std::vector<std::pair<std::vector<std::string>, std::uint64_t>> counts)
    : order_(order), add_k_(add_k) {
  if (order_ < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (!(add_k_ > 0.0)) throw std::invalid_argument("add-k must be positive");
  std::set<std::string> vocab;
  for (std::string& w : vocabulary) vocab.insert(utf8::AsciiLower(w));
  vocab.erase(std::string(kBos));
  vocab.insert(std::string(kEos));
  vocab.insert(std::string(kUnk));
  vocabulary_.assign(vocab.begin(), vocab.end());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    vocab_index_.emplace(vocabulary_[i], i);
  }
  std::sort(counts.begin(), counts.end());
  for (auto& [gram, count] : counts) {
    if (gram.size() != static_cast<std::size_t>(order_)) {
      throw std::invalid_argument("n-gram of wrong order");
    }
    ngram_counts_[Join(gram)] += count;
    context_counts_[Join(std::span(gram).first(gram.size() - 1))] += count;
  }
  raw_counts_ = std::move(counts);
}

NGramLM NGramLM::Train(std::span<const std::vector<std::string>> sentences,
                       int order, double add_k) {
  std::set<std::string> vocab;
  std::map<std::vector<std::string>, std::uint64_t> counts;
  for (const auto& sentence : sentences) {
    std::vector<std::string> padded(order - 1, std::string(kBos));
    for (const std::string& w : sentence) {
      padded.push_back(utf8::AsciiLower(w));
      vocab.insert(padded.back());
    }
    padded.emplace_back(kEos);
    for (std::size_t i = order - 1; i < padded.size(); ++i) {
      ++counts[{padded.begin() + (i - (order - 1)), padded.begin() + i + 1}];
    }
  }
  return NGramLM(order, add_k,
                 std::vector<std::string>(vocab.begin(), vocab.end()),
                 {counts.begin(), counts.end()});
}

std::string NGramLM::Normalize(std::string_view word) const {
  std::string w = utf8::AsciiLower(word);
  if (w == kBos) return w;
  return vocab_index_.contains(w) ? w : std::string(kUnk);
}

std::string NGramLM::ContextKey(std::span<const std::string> context) const {
  const std::size_t want = static_cast<std::size_t>(order_ - 1);
  std::vector<std::string> ctx;
  const std::size_t have = std::min(want, context.size());
  for (std::size_t i = have; i < want; ++i) ctx.emplace_back(kBos);
  for (std::size_t i = context.size() - have; i < context.size(); ++i) {
    ctx.push_back(Normalize(context[i]));
  }
  return Join(ctx);
}

double NGramLM::LogProb(std::span<const std::string> context,
                        std::string_view word) const {
  const std::string ctx = ContextKey(context);
  const std::string w = Normalize(word);
  const std::string key = order_ == 1 ? w : ctx + kSep + w;
  const auto ci = context_counts_.find(ctx);
  const auto ni = ngram_counts_.find(key);
  const double c_ctx = ci == context_counts_.end() ? 0.0 : ci->second;
  const double c_ng = ni == ngram_counts_.end() ? 0.0 : ni->second;
  const double v = static_cast<double>(vocabulary_.size());
  return std::log((c_ng + add_k_) / (c_ctx + add_k_ * v));
}

std::string NGramLM::Serialize() const {
  nlohmann::json j;
  j["format"] = kMagic;
  j["version"] = kFormatVersion;
  j["order"] = order_;
  j["add_k"] = add_k_;
  j["vocabulary"] = vocabulary_;
  nlohmann::json grams = nlohmann::json::array();
  for (const auto& [gram, count] : raw_counts_) {
    grams.push_back({gram, count});
  }
  j["ngrams"] = std::move(grams);
  return j.dump() + "\n";
}

void NGramLM::Save(const std::filesystem::path& path) const {
  internal::WriteFileAtomic(path, Serialize());
}

NGramLM NGramLM::Load(const std::filesystem::path& path) {
  const std::string body = internal::ReadFile(path);
  try {
    const nlohmann::json j = nlohmann::json::parse(body);
    if (j.at("format").get<std::string>() != kMagic) {
      throw ParseError(path.string(), 1, "not an advforge n-gram model");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw ParseError(path.string(), 1, "unsupported n-gram format version");
    }
    std::vector<std::pair<std::vector<std::string>, std::uint64_t>> counts;
    for (const auto& g : j.at("ngrams")) {
      counts.emplace_back(g.at(0).get<std::vector<std::string>>(),
                          g.at(1).get<std::uint64_t>());
    }
    return NGramLM(j.at("order").get<int>(), j.at("add_k").get<double>(),
                   j.at("vocabulary").get<std::vector<std::string>>(),
                   std::move(counts));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path.string(), 1, e.what());
  }
}

}  // namespace advforge
