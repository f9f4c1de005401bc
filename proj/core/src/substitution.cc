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

#include "advforge/substitution.h"

#include <algorithm>
#include <stdexcept>

#include "advforge/error.h"
#include "advforge/utf8.h"
#include "http_client.h"
#include "json.hpp"
#include "tsv.h"

namespace advforge {

void SortCandidates(std::vector<SubstitutionCandidate>& candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const SubstitutionCandidate& a,
                      const SubstitutionCandidate& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.replacement < b.replacement;
                   });
}

std::vector<SubstitutionCandidate> EmbeddingNeighbors(
    const EmbeddingTable& table, std::string_view word, std::size_t k,
    double min_cos) {
  const auto query = table.IndexOf(word);
  if (!query || k == 0) return {};
  std::vector<SubstitutionCandidate> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == *query) continue;
    const double cos = table.Cosine(*query, i);
    if (cos >= min_cos) out.push_back({table.words()[i], cos});
  }
  SortCandidates(out);
  if (out.size() > k) out.resize(k);
  return out;
}

// ---------------------------------------------------------------------------

SynonymProvider::SynonymProvider(
    std::map<std::pair<std::string, Pos>, std::vector<std::string>> entries,
    std::shared_ptr<const LanguagePipeline> pipeline)
    : entries_(std::move(entries)), pipeline_(std::move(pipeline)) {}

SynonymProvider SynonymProvider::Load(
    const std::filesystem::path& path,
    std::shared_ptr<const LanguagePipeline> pipeline) {
  std::map<std::pair<std::string, Pos>, std::vector<std::string>> entries;
  internal::ForEachTsvLine(
      path, [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 3 || f[0].empty()) {
          throw ParseError(path.string(), line,
                           "expected word<TAB>POS<TAB>comma-list");
        }
        const auto pos = ParsePos(f[1]);
        if (!pos) {
          throw ParseError(path.string(), line, "unknown POS '" + f[1] + "'");
        }
        auto& list = entries[{utf8::AsciiLower(f[0]), *pos}];
        for (const std::string& syn : internal::Split(f[2], ',')) {
          if (syn.empty()) continue;
          const std::string s = utf8::AsciiLower(syn);
          if (std::find(list.begin(), list.end(), s) == list.end()) {
            list.push_back(s);
          }
        }
      });
  return SynonymProvider(std::move(entries), std::move(pipeline));
}

std::vector<SubstitutionCandidate> SynonymProvider::Synonyms(
    std::string_view word, Pos pos) const {
  const std::string lower = utf8::AsciiLower(word);
  const std::string key = pipeline_ ? pipeline_->Lemmatize(word) : lower;
  const auto it = entries_.find({key, pos});
  if (it == entries_.end()) return {};
  std::vector<SubstitutionCandidate> out;
  for (const std::string& syn : it->second) {
    if (syn != lower && syn != key) out.push_back({syn, 1.0});
  }
  SortCandidates(out);
  return out;
}

// ---------------------------------------------------------------------------

SememeInventory::SememeInventory(std::map<std::string, Entry> entries) {
  for (auto& [word, entry] : entries) {
    if (entry.sememes.empty()) {
      throw std::invalid_argument("sememe inventory: empty set for '" + word +
                                  "'");
    }
    classes_[{entry.pos, entry.sememes}].push_back(word);
    entries_.emplace(word, std::move(entry));
  }
}

SememeInventory SememeInventory::Load(const std::filesystem::path& path) {
  std::map<std::string, Entry> entries;
  internal::ForEachTsvLine(
      path, [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 3 || f[0].empty()) {
          throw ParseError(path.string(), line,
                           "expected word<TAB>POS<TAB>comma-list");
        }
        const auto pos = ParsePos(f[1]);
        if (!pos) {
          throw ParseError(path.string(), line, "unknown POS '" + f[1] + "'");
        }
        Entry e;
        e.pos = *pos;
        for (const std::string& s : internal::Split(f[2], ',')) {
          if (!s.empty()) e.sememes.insert(s);
        }
        if (e.sememes.empty()) {
          throw ParseError(path.string(), line, "empty sememe set");
        }
        if (!entries.emplace(utf8::AsciiLower(f[0]), std::move(e)).second) {
          throw ParseError(path.string(), line, "duplicate word '" + f[0] + "'");
        }
      });
  return SememeInventory(std::move(entries));
}

const SememeInventory::Entry* SememeInventory::Find(
    std::string_view word) const {
  const auto it = entries_.find(utf8::AsciiLower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<SubstitutionCandidate> SememeSubstitutes(
    std::string_view word, Pos pos, const SememeInventory& inventory) {
  const std::string lower = utf8::AsciiLower(word);
  const SememeInventory::Entry* entry = inventory.Find(lower);
  if (entry == nullptr || entry->pos != pos) return {};
  const auto it = inventory.classes_.find({pos, entry->sememes});
  if (it == inventory.classes_.end()) return {};
  std::vector<SubstitutionCandidate> out;
  for (const std::string& w : it->second) {
    if (w != lower) out.push_back({w, 1.0});
  }
  SortCandidates(out);
  return out;
}

// ---------------------------------------------------------------------------

CharMap::CharMap(
    std::map<char32_t, std::vector<std::pair<char32_t, double>>> entries) {
  for (auto& [ch, subs] : entries) {
    std::vector<SubstitutionCandidate> cands;
    for (const auto& [s, score] : subs) {
      if (s == ch) continue;
      cands.push_back({utf8::Encode(s), score});
    }
    SortCandidates(cands);
    entries_.emplace(ch, std::move(cands));
  }
}

CharMap CharMap::Load(const std::filesystem::path& path) {
  std::map<char32_t, std::vector<std::pair<char32_t, double>>> entries;
  auto single = [&](const std::string& field, std::size_t line) {
    const std::u32string cps = utf8::ToU32(field);
    if (cps.size() != 1) {
      throw ParseError(path.string(), line,
                       "expected a single character, got '" + field + "'");
    }
    return cps.front();
  };
  internal::ForEachTsvLine(
      path, [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() < 3 || f.size() % 2 == 0) {
          throw ParseError(path.string(), line,
                           "expected char<TAB>(subst<TAB>score)+");
        }
        const char32_t ch = single(f[0], line);
        auto& subs = entries[ch];
        for (std::size_t i = 1; i + 1 < f.size(); i += 2) {
          double score = 0.0;
          if (!internal::ParseDouble(f[i + 1], score)) {
            throw ParseError(path.string(), line, "bad score '" + f[i + 1] + "'");
          }
          subs.emplace_back(single(f[i], line), score);
        }
      });
  return CharMap(std::move(entries));
}

std::vector<SubstitutionCandidate> CharMap::Lookup(char32_t ch) const {
  const auto it = entries_.find(ch);
  return it == entries_.end() ? std::vector<SubstitutionCandidate>{}
                              : it->second;
}

std::vector<SubstitutionCandidate> VisualCharSubstitutes(const CharMap& map,
                                                         char32_t ch,
                                                         std::size_t k) {
  std::vector<SubstitutionCandidate> out = map.Lookup(ch);
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<SubstitutionCandidate> KeyboardCharSubstitutes(
    const CharMap& keyboard, char32_t ch) {
  if (keyboard.Contains(ch)) return keyboard.Lookup(ch);
  if (ch >= 'A' && ch <= 'Z') {
    std::vector<SubstitutionCandidate> out =
        keyboard.Lookup(ch - U'A' + U'a');
    for (auto& c : out) {
      for (char& b : c.replacement) {
        if (b >= 'a' && b <= 'z') b = static_cast<char>(b - 'a' + 'A');
      }
    }
    SortCandidates(out);
    return out;
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

// Slot number for "$1".."$9", else 0.
int SlotIndex(std::string_view tok) {
  if (tok.size() == 2 && tok[0] == '$' && tok[1] >= '1' && tok[1] <= '9') {
    return tok[1] - '0';
  }
  return 0;
}

std::vector<std::string> SplitTokens(std::string_view s) {
  std::vector<std::string> out;
  for (std::string& t : internal::Split(s, ' ')) {
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

// Empty string when the rule is valid, else the reason.
std::string ValidateRule(const ParaphraseRules::Rule& rule) {
  if (rule.pattern.empty()) return "empty pattern";
  std::set<int> bound;
  for (const std::string& t : rule.pattern) {
    if (const int s = SlotIndex(t)) {
      if (!bound.insert(s).second) return "slot $" + std::to_string(s) + " bound twice";
    }
  }
  for (const std::string& t : rule.replacement) {
    if (const int s = SlotIndex(t); s && !bound.contains(s)) {
      return "unbound slot $" + std::to_string(s) + " in replacement";
    }
  }
  return {};
}

}  // namespace

ParaphraseRules::ParaphraseRules(std::vector<Rule> rules)
    : rules_(std::move(rules)) {
  for (const Rule& r : rules_) {
    if (const std::string why = ValidateRule(r); !why.empty()) {
      throw ParseError("<rules>", 0, why);
    }
  }
}

ParaphraseRules ParaphraseRules::Load(const std::filesystem::path& path) {
  std::vector<Rule> rules;
  internal::ForEachTsvLine(
      path, [&](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 2) {
          throw ParseError(path.string(), line,
                           "expected pattern<TAB>replacement");
        }
        Rule r{SplitTokens(f[0]), SplitTokens(f[1])};
        if (const std::string why = ValidateRule(r); !why.empty()) {
          throw ParseError(path.string(), line, why);
        }
        rules.push_back(std::move(r));
      });
  return ParaphraseRules(std::move(rules));
}

std::vector<std::vector<std::string>> ApplyParaphraseRules(
    std::span<const std::string> tokens, const ParaphraseRules& rules) {
  std::vector<std::vector<std::string>> out;
  for (const ParaphraseRules::Rule& rule : rules.rules()) {
    const std::size_t len = rule.pattern.size();
    if (len > tokens.size()) continue;
    for (std::size_t pos = 0; pos + len <= tokens.size(); ++pos) {
      std::string bound[10];
      bool match = true;
      for (std::size_t j = 0; j < len && match; ++j) {
        if (const int s = SlotIndex(rule.pattern[j])) {
          bound[s] = tokens[pos + j];
        } else {
          match = utf8::AsciiLower(rule.pattern[j]) ==
                  utf8::AsciiLower(tokens[pos + j]);
        }
      }
      if (!match) continue;
      std::vector<std::string> cand(tokens.begin(), tokens.begin() + pos);
      for (const std::string& t : rule.replacement) {
        const int s = SlotIndex(t);
        cand.push_back(s ? bound[s] : t);
      }
      cand.insert(cand.end(), tokens.begin() + pos + len, tokens.end());
      if (!std::equal(cand.begin(), cand.end(), tokens.begin(), tokens.end())) {
        out.push_back(std::move(cand));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json PostJson(const std::string& base, const std::string& path,
                        const nlohmann::json& body,
                        std::chrono::milliseconds timeout) {
  const std::string url = internal::JoinUrl(base, path);
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

}  // namespace

RemoteContextualProvider::RemoteContextualProvider(
    std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::vector<SubstitutionCandidate> RemoteContextualProvider::Substitutes(
    const std::string& text, std::size_t index) const {
  const nlohmann::json resp = PostJson(
      endpoint_, "/substitutes", {{"text", text}, {"index", index}}, timeout_);
  std::vector<SubstitutionCandidate> out;
  try {
    for (const auto& c : resp.at("candidates")) {
      out.push_back({c.at("word").get<std::string>(), c.at("score").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable(endpoint_ + "/substitutes: bad schema: " + e.what());
  }
  SortCandidates(out);
  return out;
}

RemoteParaphraseProvider::RemoteParaphraseProvider(
    std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::vector<std::string> RemoteParaphraseProvider::Paraphrase(
    const std::string& text) const {
  const nlohmann::json resp =
      PostJson(endpoint_, "/paraphrase", {{"text", text}}, timeout_);
  try {
    return resp.at("paraphrases").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable(endpoint_ + "/paraphrase: bad schema: " + e.what());
  }
}

}  // namespace advforge
