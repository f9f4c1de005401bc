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

// Builds the trained part of the bundled pack from the text resources that
// make_pack.py wrote: the trigram LM, the two LR victims, the exhaustive
// flippability certificate for the weak split, and data/manifest.json.
//
//   advforge_pack --data data

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "advforge/advforge.h"
#include "json.hpp"

namespace fs = std::filesystem;
using advforge::Sample;

namespace {

double Accuracy(const advforge::Victim& victim,
                const std::vector<Sample>& data) {
  std::vector<std::string> texts;
  for (const Sample& s : data) texts.push_back(s.text);
  const std::vector<int> pred = victim.Predict(texts);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < data.size(); ++i) ok += pred[i] == data[i].label;
  return static_cast<double>(ok) / static_cast<double>(data.size());
}

// Per-position candidates: embedding neighbors (POS-matched, content tokens
// only) united with lexicon synonyms. This is the union of the TextFooler
// and PWWS search spaces.
std::vector<std::vector<std::string>> SearchSpace(
    const Sample& s, const advforge::AttackResources& res) {
  std::vector<std::vector<std::string>> space(s.tokens.size());
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const advforge::Token& t = s.tokens[i];
    if (advforge::IsPunctuationToken(t.surface) ||
        res.pipeline->IsStopword(t.surface)) {
      continue;
    }
    std::vector<std::string> c;
    for (const auto& n : advforge::EmbeddingNeighbors(
             *res.embeddings, advforge::utf8::AsciiLower(t.surface))) {
      if (res.pipeline->Tag(n.replacement) == t.pos) c.push_back(n.replacement);
    }
    for (const auto& n : res.synonyms->Synonyms(t.surface, t.pos)) {
      if (std::find(c.begin(), c.end(), n.replacement) == c.end()) {
        c.push_back(n.replacement);
      }
    }
    space[i] = std::move(c);
  }
  return space;
}

struct Certificate {
  bool flippable = false;
  std::string witness;
  std::size_t enumerated = 0;
};

// Exhaustive product enumeration (original word kept as an option at every
// position).
Certificate Certify(const Sample& s, const advforge::Victim& victim,
                    const std::vector<std::vector<std::string>>& space) {
  std::vector<std::string> words;
  for (const auto& t : s.tokens) words.push_back(t.surface);
  std::vector<std::size_t> idx(words.size(), 0);
  Certificate cert;
  while (true) {
    std::vector<std::string> cand = words;
    bool changed = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (idx[i] > 0) {
        cand[i] = space[i][idx[i] - 1];
        changed = true;
      }
    }
    if (changed) {
      ++cert.enumerated;
      const std::string text = advforge::Detokenize(cand);
      if (victim.Predict(std::span<const std::string>(&text, 1))[0] !=
          s.label) {
        cert.flippable = true;
        cert.witness = text;
        return cert;
      }
    }
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] > space[p].size()) idx[p++] = 0;
    if (p == idx.size()) return cert;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build trained artifacts of the bundled resource pack"};
  std::string data_dir = "data";
  app.add_option("--data", data_dir, "Data directory holding en/")
      ->check(CLI::ExistingDirectory);
  CLI11_PARSE(app, argc, argv);

  const fs::path root(data_dir);
  const fs::path en = root / "en";
  try {
    auto pipeline = std::make_shared<const advforge::LanguagePipeline>(
        advforge::LanguagePipeline::Load(en / "pipeline"));

    // Trigram LM over the whole corpus.
    const auto corpus = advforge::LoadDataset(en / "corpus.tsv", *pipeline);
    std::vector<std::vector<std::string>> sentences;
    for (const Sample& s : corpus) {
      sentences.push_back(advforge::SplitWords(s.text));
    }
    advforge::NGramLM::Train(sentences, 3, 0.01).Save(en / "lm.json");

    const auto train = advforge::LoadDataset(en / "corpus_train.tsv", *pipeline);
    const auto test = advforge::LoadDataset(en / "corpus_test.tsv", *pipeline);
    advforge::TrainOptions opts;
    opts.kind = advforge::VictimKind::kLogisticRegression;
    opts.seed = 1;
    const auto toy = advforge::TrainBuiltin(train, opts);
    toy->Save(en / "toy.victim");
    std::cerr << "toy victim: train accuracy " << Accuracy(*toy, train)
              << ", test accuracy " << Accuracy(*toy, test) << "\n";

    const auto weak_train =
        advforge::LoadDataset(en / "weak_train.tsv", *pipeline);
    const auto weak = advforge::TrainBuiltin(weak_train, opts);
    weak->Save(en / "weak.victim");

    // Exhaustive certificate for the weak split.
    advforge::AttackResources res;
    res.pipeline = pipeline;
    res.embeddings = std::make_shared<const advforge::EmbeddingTable>(
        advforge::EmbeddingTable::Load(en / "embeddings.tsv"));
    res.synonyms = std::make_shared<const advforge::SynonymProvider>(
        advforge::SynonymProvider::Load(en / "synonyms.tsv", pipeline));
    const auto split = advforge::LoadDataset(en / "weak_split.tsv", *pipeline);
    nlohmann::json instances = nlohmann::json::array();
    std::size_t correct = 0;
    std::size_t flippable = 0;
    for (std::size_t i = 0; i < split.size(); ++i) {
      const Sample& s = split[i];
      nlohmann::json row{{"index", i}};
      const bool ok =
          weak->Predict(std::span<const std::string>(&s.text, 1))[0] == s.label;
      row["correct"] = ok;
      if (ok) {
        ++correct;
        const Certificate c = Certify(s, *weak, SearchSpace(s, res));
        row["flippable"] = c.flippable;
        row["enumerated"] = c.enumerated;
        row["witness"] = c.flippable ? nlohmann::json(c.witness)
                                     : nlohmann::json(nullptr);
        flippable += c.flippable;
      }
      instances.push_back(row);
    }
    nlohmann::json cert{
        {"format", "advforge-certificate"},
        {"version", 1},
        {"victim", "weak.victim"},
        {"dataset", "weak_split.tsv"},
        {"space",
         "per position: top-50 embedding neighbors with cos >= 0.5 and equal "
         "POS, united with lexicon synonyms; stopwords and punctuation "
         "fixed; full product enumerated"},
        {"victim_sha256", advforge::Sha256Path(en / "weak.victim")},
        {"dataset_sha256", advforge::Sha256Path(en / "weak_split.tsv")},
        {"correct", correct},
        {"flippable", flippable},
        {"instances", instances}};
    {
      std::ofstream out(en / "certification.json", std::ios::trunc);
      out << cert.dump(1) << "\n";
    }
    std::cerr << "weak split: " << correct << " correctly classified, "
              << flippable << " certified flippable\n";

    // Manifest.
    struct Entry {
      const char* id;
      const char* kind;
      const char* path;
    };
    const Entry entries[] = {
        {"en.pipeline", "pipeline", "en/pipeline"},
        {"en.embeddings", "embeddings", "en/embeddings.tsv"},
        {"en.synonyms", "synonyms", "en/synonyms.tsv"},
        {"en.sememes", "sememes", "en/sememes.tsv"},
        {"en.charmap", "charmap", "en/charmap.tsv"},
        {"en.keyboard", "keyboard", "en/keyboard.tsv"},
        {"en.rules", "rules", "en/rules.tsv"},
        {"en.lm", "lm", "en/lm.json"},
        {"en.corpus", "dataset", "en/corpus.tsv"},
        {"en.corpus-train", "dataset", "en/corpus_train.tsv"},
        {"en.corpus-test", "dataset", "en/corpus_test.tsv"},
        {"en.toy-victim", "victim", "en/toy.victim"},
        {"en.weak-train", "dataset", "en/weak_train.tsv"},
        {"en.weak-split", "dataset", "en/weak_split.tsv"},
        {"en.weak-victim", "victim", "en/weak.victim"},
    };
    nlohmann::json manifest = nlohmann::json::array();
    for (const Entry& e : entries) {
      manifest.push_back({{"id", e.id},
                          {"kind", e.kind},
                          {"path", e.path},
                          {"sha256", advforge::Sha256Path(root / e.path)}});
    }
    std::ofstream out(root / "manifest.json", std::ios::trunc);
    out << manifest.dump(2) << "\n";
  } catch (const advforge::Error& e) {
    std::cerr << "advforge_pack: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
