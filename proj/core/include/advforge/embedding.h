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

#ifndef ADVFORGE_EMBEDDING_H_
#define ADVFORGE_EMBEDDING_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "advforge/matrix.h"

namespace advforge {

// Word -> dense vector. Shared by the MLP victim, the embedding-neighbor
// provider and the semantic-similarity metric.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // Throws std::invalid_argument on ragged, empty-dimension or non-finite
  // vectors and on duplicate words.
  EmbeddingTable(std::vector<std::string> words, Matrix vectors);

  // `word<TAB>f1 f2 ... fd` per line. Row dimension mismatches are reported
  // as ParseError with the offending line.
  static EmbeddingTable Load(const std::filesystem::path& path);

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return vectors_.cols(); }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::size_t> IndexOf(std::string_view word) const;
  bool Contains(std::string_view word) const {
    return IndexOf(word).has_value();
  }
  std::span<const double> Row(std::size_t index) const {
    return vectors_.row(index);
  }
  // Case-folded lookup. nullopt when out of vocabulary.
  std::optional<std::span<const double>> Find(std::string_view word) const;

  double RowNorm(std::size_t index) const { return norms_[index]; }
  double Cosine(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::string> words_;
  Matrix vectors_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace advforge

#endif  // ADVFORGE_EMBEDDING_H_
