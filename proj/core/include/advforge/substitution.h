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

#ifndef ADVFORGE_SUBSTITUTION_H_
#define ADVFORGE_SUBSTITUTION_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "advforge/embedding.h"
#include "advforge/text.h"

namespace advforge {

struct SubstitutionCandidate {
  std::string replacement;
  double score = 0.0;

  friend bool operator==(const SubstitutionCandidate&,
                         const SubstitutionCandidate&) = default;
};

// Descending score, then lexicographic replacement.
void SortCandidates(std::vector<SubstitutionCandidate>& candidates);

inline constexpr std::size_t kDefaultNeighborCount = 50;
inline constexpr double kDefaultMinCosine = 0.5;

// Top-k words by cosine similarity with cos >= min_cos. The query word is
// never returned; an out-of-vocabulary word yields nothing.
std::vector<SubstitutionCandidate> EmbeddingNeighbors(
    const EmbeddingTable& table, std::string_view word,
    std::size_t k = kDefaultNeighborCount,
    double min_cos = kDefaultMinCosine);

// Lemma-keyed synonym lists from `word<TAB>POS<TAB>comma-list`. Candidates
// are returned as stored (no re-inflection), score 1.0.
class SynonymProvider {
 public:
  SynonymProvider() = default;
  explicit SynonymProvider(
      std::map<std::pair<std::string, Pos>, std::vector<std::string>> entries,
      std::shared_ptr<const LanguagePipeline> pipeline = nullptr);

  static SynonymProvider Load(
      const std::filesystem::path& path,
      std::shared_ptr<const LanguagePipeline> pipeline = nullptr);

  // Looks up the lemma of `word` (via the pipeline when present, else the
  // lower-cased word) under `pos`.
  std::vector<SubstitutionCandidate> Synonyms(std::string_view word,
                                              Pos pos) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, Pos>, std::vector<std::string>> entries_;
  std::shared_ptr<const LanguagePipeline> pipeline_;
};

// word -> (POS, sememe set), from `word<TAB>POS<TAB>comma-list`.
class SememeInventory {
 public:
  struct Entry {
    Pos pos = Pos::kOther;
    std::set<std::string> sememes;
  };

  SememeInventory() = default;
  // Throws std::invalid_argument on an empty sememe set.
  explicit SememeInventory(std::map<std::string, Entry> entries);

  static SememeInventory Load(const std::filesystem::path& path);

  const Entry* Find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
  // (POS, sememe set) -> words sharing it.
  std::map<std::pair<Pos, std::set<std::string>>, std::vector<std::string>>
      classes_;

  friend std::vector<SubstitutionCandidate> SememeSubstitutes(
      std::string_view, Pos, const SememeInventory&);
};

// Every other word with the identical sememe set and identical POS.
std::vector<SubstitutionCandidate> SememeSubstitutes(
    std::string_view word, Pos pos, const SememeInventory& inventory);

// Character -> scored replacement characters, from
// `char<TAB>(subst<TAB>score)+`. Used for both the visual homoglyph map and
// the keyboard-adjacency map.
class CharMap {
 public:
  CharMap() = default;
  explicit CharMap(std::map<char32_t, std::vector<std::pair<char32_t, double>>>
                       entries);

  static CharMap Load(const std::filesystem::path& path);

  // Sorted candidates; never contains `ch`.
  std::vector<SubstitutionCandidate> Lookup(char32_t ch) const;
  bool Contains(char32_t ch) const { return entries_.contains(ch); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<char32_t, std::vector<SubstitutionCandidate>> entries_;
};

std::vector<SubstitutionCandidate> VisualCharSubstitutes(const CharMap& map,
                                                         char32_t ch,
                                                         std::size_t k);

// QWERTY neighbors with score 1.0. Upper-case letters fall back to the
// lower-case entry and are returned upper-cased.
std::vector<SubstitutionCandidate> KeyboardCharSubstitutes(
    const CharMap& keyboard, char32_t ch);

// Token-sequence rewrite rules with single-token wildcard slots $1..$9.
class ParaphraseRules {
 public:
  struct Rule {
    std::vector<std::string> pattern;
    std::vector<std::string> replacement;
  };

  ParaphraseRules() = default;
  // Throws ParseError (line 0) on an unbound replacement slot.
  explicit ParaphraseRules(std::vector<Rule> rules);

  // `pattern<TAB>replacement` with space-separated tokens. Rules whose
  // replacement uses a slot the pattern does not bind are rejected.
  static ParaphraseRules Load(const std::filesystem::path& path);

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

// One candidate token sequence per (rule, match position), in that order.
// Literal pattern tokens match case-insensitively.
std::vector<std::vector<std::string>> ApplyParaphraseRules(
    std::span<const std::string> tokens, const ParaphraseRules& rules);

// Context-dependent word substitution served out of process
// (`POST /substitutes {"text", "index"} -> {"candidates": [{"word","score"}]}`).
class ContextualProvider {
 public:
  virtual ~ContextualProvider() = default;
  virtual std::vector<SubstitutionCandidate> Substitutes(
      const std::string& text, std::size_t index) const = 0;
};

class RemoteContextualProvider final : public ContextualProvider {
 public:
  explicit RemoteContextualProvider(
      std::string endpoint,
      std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));
  std::vector<SubstitutionCandidate> Substitutes(
      const std::string& text, std::size_t index) const override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

// Sentence paraphrases served out of process
// (`POST /paraphrase {"text"} -> {"paraphrases": [str]}`).
class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  virtual std::vector<std::string> Paraphrase(const std::string& text) const = 0;
};

class RemoteParaphraseProvider final : public ParaphraseProvider {
 public:
  explicit RemoteParaphraseProvider(
      std::string endpoint,
      std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));
  std::vector<std::string> Paraphrase(const std::string& text) const override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

}  // namespace advforge

#endif  // ADVFORGE_SUBSTITUTION_H_
