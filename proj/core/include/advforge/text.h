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

#ifndef ADVFORGE_TEXT_H_
#define ADVFORGE_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace advforge {

enum class Pos { kNoun, kVerb, kAdj, kAdv, kOther };

std::string_view PosName(Pos pos);
// Accepts NOUN, VERB, ADJ, ADV, OTHER. Returns nullopt for anything else.
std::optional<Pos> ParsePos(std::string_view name);

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string surface;
  Pos pos = Pos::kOther;
  std::string lemma;
  // Byte offsets into the source text, half-open.
  Span span;
};

struct Sample {
  std::string text;
  std::vector<Token> tokens;
  int label = 0;
};

// A language resource pack: tokenizer behavior, POS lexicon, lemmatizer
// tables and stopwords. Immutable once built; share it by const reference
// or shared_ptr across threads.
class LanguagePipeline {
 public:
  struct LemmaRule {
    std::string suffix;
    std::string replacement;
  };

  LanguagePipeline(std::string id,
                   std::unordered_map<std::string, Pos> pos_lexicon,
                   std::unordered_map<std::string, std::string> lemma_exceptions,
                   std::vector<LemmaRule> lemma_rules,
                   std::unordered_set<std::string> stopwords);

  // Loads `poslex.tsv`, `lemma_exc.tsv`, `lemma_rules.tsv` and
  // `stopwords.txt` from `dir`. Throws ParseError with line numbers.
  static LanguagePipeline Load(const std::filesystem::path& dir,
                               std::string id = "en");

  const std::string& id() const { return id_; }
  const std::unordered_map<std::string, Pos>& pos_lexicon() const {
    return pos_lexicon_;
  }
  // Rules sorted by descending suffix length; file order breaks ties.
  const std::vector<LemmaRule>& lemma_rules() const { return lemma_rules_; }
  const std::unordered_set<std::string>& stopwords() const {
    return stopwords_;
  }

  bool IsStopword(std::string_view word) const;
  Pos Tag(std::string_view word) const;
  std::string Lemmatize(std::string_view word) const;

 private:
  std::string id_;
  std::unordered_map<std::string, Pos> pos_lexicon_;
  std::unordered_map<std::string, std::string> lemma_exceptions_;
  std::vector<LemmaRule> lemma_rules_;
  std::unordered_set<std::string> stopwords_;
};

// Holds pipelines by id; ids are unique.
class PipelineRegistry {
 public:
  void Add(std::shared_ptr<const LanguagePipeline> pipeline);
  std::shared_ptr<const LanguagePipeline> Get(std::string_view id) const;
  std::vector<std::string> Ids() const;

 private:
  std::map<std::string, std::shared_ptr<const LanguagePipeline>, std::less<>>
      pipelines_;
};

// Whitespace split followed by peeling of leading/trailing punctuation
// characters into single-character tokens.
std::vector<Token> Tokenize(std::string_view text,
                            const LanguagePipeline& pipeline);

// Surfaces only, without POS or lemma. Same segmentation as Tokenize.
std::vector<std::string> SplitWords(std::string_view text);

// Joins surfaces with single spaces; punctuation-only tokens attach to the
// preceding token.
std::string Detokenize(std::span<const Token> tokens);
std::string Detokenize(std::span<const std::string> surfaces);

Pos PosTag(std::string_view word, const LanguagePipeline& pipeline);

bool IsPunctuationToken(std::string_view surface);

Sample MakeSample(std::string text, int label,
                  const LanguagePipeline& pipeline);

}  // namespace advforge

#endif  // ADVFORGE_TEXT_H_
