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

#include "advforge/text.h"

#include <algorithm>
#include <fstream>

#include "advforge/error.h"
#include "advforge/utf8.h"
#include "tsv.h"

namespace advforge {

namespace {

struct RawToken {
  std::size_t start;
  std::size_t end;
};

// Segments `text` into byte ranges. Shared by Tokenize and SplitWords.
std::vector<RawToken> Segment(std::string_view text) {
  const std::vector<utf8::CodePoint> cps = utf8::Decode(text);
  std::vector<RawToken> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (utf8::IsWhitespace(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !utf8::IsWhitespace(cps[j].value)) ++j;
    // Run [i, j): peel punctuation off both ends, one token per character.
    std::size_t lo = i;
    std::size_t hi = j;
    while (lo < hi && utf8::IsPunctuation(cps[lo].value)) {
      out.push_back({cps[lo].offset, cps[lo].offset + cps[lo].length});
      ++lo;
    }
    std::vector<RawToken> trailing;
    while (hi > lo && utf8::IsPunctuation(cps[hi - 1].value)) {
      trailing.push_back(
          {cps[hi - 1].offset, cps[hi - 1].offset + cps[hi - 1].length});
      --hi;
    }
    if (lo < hi) {
      out.push_back({cps[lo].offset, cps[hi - 1].offset + cps[hi - 1].length});
    }
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
    i = j;
  }
  return out;
}

std::string Lower(std::string_view s) { return utf8::AsciiLower(s); }

}  // namespace

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return "NOUN";
    case Pos::kVerb:
      return "VERB";
    case Pos::kAdj:
      return "ADJ";
    case Pos::kAdv:
      return "ADV";
    case Pos::kOther:
      return "OTHER";
  }
  return "OTHER";
}

std::optional<Pos> ParsePos(std::string_view name) {
  if (name == "NOUN") return Pos::kNoun;
  if (name == "VERB") return Pos::kVerb;
  if (name == "ADJ") return Pos::kAdj;
  if (name == "ADV") return Pos::kAdv;
  if (name == "OTHER") return Pos::kOther;
  return std::nullopt;
}

LanguagePipeline::LanguagePipeline(
    std::string id, std::unordered_map<std::string, Pos> pos_lexicon,
    std::unordered_map<std::string, std::string> lemma_exceptions,
    std::vector<LemmaRule> lemma_rules,
    std::unordered_set<std::string> stopwords)
    : id_(std::move(id)),
      pos_lexicon_(std::move(pos_lexicon)),
      lemma_exceptions_(std::move(lemma_exceptions)),
      lemma_rules_(std::move(lemma_rules)) {
  std::stable_sort(lemma_rules_.begin(), lemma_rules_.end(),
                   [](const LemmaRule& a, const LemmaRule& b) {
                     return a.suffix.size() > b.suffix.size();
                   });
  for (const std::string& w : stopwords) stopwords_.insert(Lower(w));
}

LanguagePipeline LanguagePipeline::Load(const std::filesystem::path& dir,
                                        std::string id) {
  std::unordered_map<std::string, Pos> lexicon;
  internal::ForEachTsvLine(
      dir / "poslex.tsv",
      [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 2 || f[0].empty()) {
          throw ParseError((dir / "poslex.tsv").string(), line,
                           "expected word<TAB>tag");
        }
        const auto pos = ParsePos(f[1]);
        if (!pos) {
          throw ParseError((dir / "poslex.tsv").string(), line,
                           "unknown POS tag '" + f[1] + "'");
        }
        lexicon[Lower(f[0])] = *pos;
      });

  std::unordered_map<std::string, std::string> exceptions;
  internal::ForEachTsvLine(
      dir / "lemma_exc.tsv",
      [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 2 || f[0].empty() || f[1].empty()) {
          throw ParseError((dir / "lemma_exc.tsv").string(), line,
                           "expected form<TAB>lemma");
        }
        exceptions[Lower(f[0])] = Lower(f[1]);
      });

  std::vector<LemmaRule> rules;
  internal::ForEachTsvLine(
      dir / "lemma_rules.tsv",
      [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 2 || f[0].empty()) {
          throw ParseError((dir / "lemma_rules.tsv").string(), line,
                           "expected suffix<TAB>replacement");
        }
        rules.push_back({Lower(f[0]), Lower(f[1])});
      });

  std::unordered_set<std::string> stopwords;
  internal::ForEachTsvLine(
      dir / "stopwords.txt",
      [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 1) {
          throw ParseError((dir / "stopwords.txt").string(), line,
                           "expected one word per line");
        }
        stopwords.insert(Lower(f[0]));
      });

  return LanguagePipeline(std::move(id), std::move(lexicon),
                          std::move(exceptions), std::move(rules),
                          std::move(stopwords));
}

bool LanguagePipeline::IsStopword(std::string_view word) const {
  return stopwords_.contains(Lower(word));
}

Pos LanguagePipeline::Tag(std::string_view word) const {
  const auto it = pos_lexicon_.find(Lower(word));
  return it == pos_lexicon_.end() ? Pos::kOther : it->second;
}

std::string LanguagePipeline::Lemmatize(std::string_view word) const {
  const std::string lower = Lower(word);
  if (const auto it = lemma_exceptions_.find(lower);
      it != lemma_exceptions_.end()) {
    return it->second;
  }
  for (const LemmaRule& rule : lemma_rules_) {
    if (lower.size() > rule.suffix.size() && lower.ends_with(rule.suffix)) {
      std::string lemma =
          lower.substr(0, lower.size() - rule.suffix.size()) + rule.replacement;
      if (!lemma.empty()) return lemma;
    }
  }
  return lower;
}

void PipelineRegistry::Add(std::shared_ptr<const LanguagePipeline> pipeline) {
  const std::string id = pipeline->id();
  if (!pipelines_.emplace(id, std::move(pipeline)).second) {
    throw ConfigError("duplicate language pipeline id '" + id + "'");
  }
}

std::shared_ptr<const LanguagePipeline> PipelineRegistry::Get(
    std::string_view id) const {
  const auto it = pipelines_.find(id);
  if (it == pipelines_.end()) {
    throw ConfigError("no language pipeline '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<std::string> PipelineRegistry::Ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : pipelines_) ids.push_back(id);
  return ids;
}

std::vector<Token> Tokenize(std::string_view text,
                            const LanguagePipeline& pipeline) {
  std::vector<Token> tokens;
  for (const RawToken& raw : Segment(text)) {
    Token tok;
    tok.surface = std::string(text.substr(raw.start, raw.end - raw.start));
    tok.span = {raw.start, raw.end};
    if (IsPunctuationToken(tok.surface)) {
      tok.pos = Pos::kOther;
      tok.lemma = tok.surface;
    } else {
      tok.pos = pipeline.Tag(tok.surface);
      tok.lemma = pipeline.Lemmatize(tok.surface);
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> out;
  for (const RawToken& raw : Segment(text)) {
    out.emplace_back(text.substr(raw.start, raw.end - raw.start));
  }
  return out;
}

std::string Detokenize(std::span<const std::string> surfaces) {
  std::string out;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    if (i > 0 && !IsPunctuationToken(surfaces[i])) out.push_back(' ');
    out += surfaces[i];
  }
  return out;
}

std::string Detokenize(std::span<const Token> tokens) {
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const Token& t : tokens) surfaces.push_back(t.surface);
  return Detokenize(surfaces);
}

Pos PosTag(std::string_view word, const LanguagePipeline& pipeline) {
  return pipeline.Tag(word);
}

bool IsPunctuationToken(std::string_view surface) {
  if (surface.empty()) return false;
  for (const utf8::CodePoint& cp : utf8::Decode(surface)) {
    if (!utf8::IsPunctuation(cp.value)) return false;
  }
  return true;
}

Sample MakeSample(std::string text, int label,
                  const LanguagePipeline& pipeline) {
  Sample s;
  s.tokens = Tokenize(text, pipeline);
  s.text = std::move(text);
  s.label = label;
  return s;
}

}  // namespace advforge
