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

#include "advforge/embedding.h"

#include <cmath>
#include <stdexcept>

#include "advforge/error.h"
#include "advforge/utf8.h"
#include "tsv.h"

namespace advforge {

EmbeddingTable::EmbeddingTable(std::vector<std::string> words, Matrix vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (words_.size() != vectors_.rows()) {
    throw std::invalid_argument("embedding table: word/row count mismatch");
  }
  if (!words_.empty() && vectors_.cols() == 0) {
    throw std::invalid_argument("embedding table: zero-dimensional vectors");
  }
  norms_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (double v : vectors_.row(i)) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("embedding table: non-finite entry for '" +
                                    words_[i] + "'");
      }
    }
    norms_.push_back(Norm2(vectors_.row(i)));
    if (!index_.emplace(words_[i], i).second) {
      throw std::invalid_argument("embedding table: duplicate word '" +
                                  words_[i] + "'");
    }
  }
}

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& path) {
  std::vector<std::string> words;
  std::vector<double> data;
  std::size_t dim = 0;
  std::unordered_map<std::string, std::size_t> seen;
  internal::ForEachTsvLine(
      path, [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 2 || f[0].empty()) {
          throw ParseError(path.string(), line, "expected word<TAB>vector");
        }
        std::vector<double> row;
        for (const std::string& tok : internal::Split(f[1], ' ')) {
          if (tok.empty()) continue;
          double v = 0.0;
          if (!internal::ParseDouble(tok, v)) {
            throw ParseError(path.string(), line, "bad number '" + tok + "'");
          }
          row.push_back(v);
        }
        if (row.empty()) {
          throw ParseError(path.string(), line, "empty vector");
        }
        if (words.empty()) {
          dim = row.size();
        } else if (row.size() != dim) {
          throw ParseError(path.string(), line,
                           "dimension " + std::to_string(row.size()) +
                               " != " + std::to_string(dim));
        }
        const std::string word = utf8::AsciiLower(f[0]);
        if (!seen.emplace(word, words.size()).second) {
          throw ParseError(path.string(), line, "duplicate word '" + word + "'");
        }
        words.push_back(word);
        data.insert(data.end(), row.begin(), row.end());
      });
  const std::size_t rows = words.size();
  return EmbeddingTable(std::move(words), Matrix(rows, dim, std::move(data)));
}

std::optional<std::size_t> EmbeddingTable::IndexOf(
    std::string_view word) const {
  const auto it = index_.find(utf8::AsciiLower(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const double>> EmbeddingTable::Find(
    std::string_view word) const {
  const auto idx = IndexOf(word);
  if (!idx) return std::nullopt;
  return Row(*idx);
}

double EmbeddingTable::Cosine(std::size_t a, std::size_t b) const {
  const double denom = norms_[a] * norms_[b];
  if (denom == 0.0) return 0.0;
  return Dot(Row(a), Row(b)) / denom;
}

}  // namespace advforge
