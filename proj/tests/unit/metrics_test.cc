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

#include <algorithm>
#include <cmath>
#include <random>

#include "advforge/metrics.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace advforge {
namespace {

using ::advforge::testing::BundledResources;
using ::advforge::testing::MakeTable;
using Tokens = std::vector<std::string>;

TEST(OrientationTest, MatchesEvaluationTable) {
  using O = Orientation;
  const std::pair<std::string_view, O> expected[] = {
      {"asr", O::kHigherBetter},
      {"modification_rate", O::kLowerBetter},
      {"levenshtein", O::kLowerBetter},  // a distance, not a similarity
      {"jaccard_char", O::kHigherBetter},
      {"jaccard_word", O::kHigherBetter},
      {"bleu", O::kHigherBetter},
      {"semantic_similarity", O::kHigherBetter},
      {"fluency", O::kLowerBetter},
      {"grammaticality", O::kLowerBetter},
      {"queries", O::kLowerBetter},
      {"time", O::kLowerBetter},
  };
  for (const auto& [id, o] : expected) {
    EXPECT_EQ(MetricOrientation(id), o) << id;
  }
  EXPECT_FALSE(MetricOrientation("accuracy").has_value());
}

TEST(OrientationTest, MismatchRefused) {
  EXPECT_NO_THROW(CheckOrientation(MakeMetricValue("bleu", 0.5)));
  MetricValue v = MakeMetricValue("bleu", 0.5);
  v.orientation = Orientation::kLowerBetter;
  EXPECT_THROW(CheckOrientation(v), MetricError);
  EXPECT_THROW(MakeMetricValue("nope", 1.0), MetricError);
}

TEST(ModificationRateTest, DefinitionalCases) {
  const Tokens ten = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  EXPECT_EQ(WordModificationRate(ten, ten), 0.0);
  Tokens two = ten;
  two[3] = "x";
  two[7] = "y";
  EXPECT_DOUBLE_EQ(WordModificationRate(ten, two), 0.2);
  EXPECT_DOUBLE_EQ(WordModificationRate(Tokens{"a", "b"}, Tokens{"a", "c", "d"}),
                   1.0);
  EXPECT_THROW(WordModificationRate(Tokens{}, Tokens{"a"}), EmptyOriginal);
  EXPECT_DOUBLE_EQ(WordModificationRate(Tokens{"a"}, Tokens{"b", "c", "d"}),
                   3.0);
}

TEST(ModificationRateTest, ZeroIffEqual) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> word(0, 3);
  std::uniform_int_distribution<int> len(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens a, b;
    for (int n = len(rng); n > 0; --n) a.push_back(std::string(1, 'a' + word(rng)));
    for (int n = len(rng); n > 0; --n) b.push_back(std::string(1, 'a' + word(rng)));
    EXPECT_EQ(WordModificationRate(a, b) == 0.0, a == b);
  }
}

TEST(LevenshteinTest, Examples) {
  EXPECT_EQ(Levenshtein("", "abc"), 3u);
  EXPECT_EQ(Levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(Levenshtein("flaw", "lawn"), 2u);
  // Scalar values, not bytes.
  EXPECT_EQ(Levenshtein("café", "cafe"), 1u);
  EXPECT_EQ(Levenshtein("你好", "你"), 1u);
}

TEST(JaccardTest, Bounds) {
  EXPECT_DOUBLE_EQ(JaccardChar("abc", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(JaccardChar("abc", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(JaccardChar("ab", "bc"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(JaccardChar("", ""), 1.0);
  EXPECT_DOUBLE_EQ(JaccardWord("The film", "the movie"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(JaccardWord("", ""), 1.0);
}

TEST(BleuTest, IdentityAndSmoothing) {
  const Tokens x = {"the", "cat", "sat", "on", "the", "mat"};
  EXPECT_DOUBLE_EQ(Bleu(x, x), 1.0);
  const Tokens cand = {"q", "r", "s", "t", "u", "v", "w", "x", "y", "z"};
  const Tokens ref = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  const double b = Bleu(cand, ref);
  EXPECT_GT(b, 0.0);
  EXPECT_LT(b, 0.1);
  EXPECT_THROW(Bleu(Tokens{}, ref), EmptyCandidate);
}

TEST(BleuTest, HandComputedFiveTokens) {
  // Precisions 5/5, 3/4, 2/3, 1/2; brevity penalty exp(1 - 6/5).
  const Tokens cand = {"the", "cat", "sat", "on", "mat"};
  const Tokens ref = {"the", "cat", "sat", "on", "the", "mat"};
  EXPECT_NEAR(Bleu(cand, ref), std::sqrt(0.5) * std::exp(-0.2), 1e-12);
}

TEST(BleuTest, ShortCandidateCapsOrder) {
  // Two tokens: only unigram and bigram precisions, both 1.
  EXPECT_DOUBLE_EQ(Bleu(Tokens{"a", "b"}, Tokens{"a", "b"}), 1.0);
}

TEST(SemanticSimilarityTest, ConstructedVectors) {
  const auto t = MakeTable({{"up", {1, 0}}, {"left", {0, 1}}, {"high", {2, 0}}});
  EXPECT_DOUBLE_EQ(SemanticSimilarity("up", "left", *t), 0.0);
  EXPECT_NEAR(SemanticSimilarity("up", "high", *t), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(SemanticSimilarity("zzz", "up", *t), 0.0);
}

TEST(SemanticSimilarityTest, BundledRange) {
  const auto& res = BundledResources();
  const auto corpus = ::advforge::testing::BundledDataset("corpus_test.tsv");
  for (std::size_t i = 0; i + 1 < 50; ++i) {
    const double s = SemanticSimilarity(corpus[i].text, corpus[i + 1].text,
                                        *res.embeddings, res.pipeline.get());
    EXPECT_GE(s, -1.0 - 1e-12);
    EXPECT_LE(s, 1.0 + 1e-12);
    EXPECT_NEAR(SemanticSimilarity(corpus[i].text, corpus[i].text,
                                   *res.embeddings, res.pipeline.get()),
                1.0, 1e-9);
  }
}

TEST(NGramLMTest, UniformUnigramPerplexityIsVocabularySize) {
  const NGramLM lm(1, 0.01, {"a", "b", "c"}, {});
  EXPECT_NEAR(FluencyPerplexity("a", lm),
              static_cast<double>(lm.vocabulary_size()), 1e-9);
  EXPECT_THROW(FluencyPerplexity("", lm), EmptyText);
}

TEST(NGramLMTest, ConditionalsSumToOne) {
  const NGramLM& lm = *BundledResources().lm;
  const auto corpus = ::advforge::testing::BundledDataset("corpus.tsv");
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Sample& s = corpus[rng() % corpus.size()];
    const auto words = SplitWords(s.text);
    const std::size_t cut = rng() % (words.size() + 1);
    const std::vector<std::string> ctx(words.begin(), words.begin() + cut);
    double total = 0.0;
    for (const std::string& w : lm.vocabulary()) {
      total += std::exp(lm.LogProb(ctx, w));
    }
    EXPECT_NEAR(total, 1.0, 1e-6);
  }
}

TEST(NGramLMTest, PerplexityAtLeastOneAndShuffleHurts) {
  const NGramLM& lm = *BundledResources().lm;
  const auto corpus = ::advforge::testing::BundledDataset("corpus.tsv");
  std::mt19937_64 rng(9);
  int worse = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    auto words = SplitWords(corpus[i].text);
    const double orig = FluencyPerplexity(corpus[i].text, lm);
    EXPECT_GE(orig, 1.0);
    std::shuffle(words.begin(), words.end(), rng);
    worse += FluencyPerplexity(Detokenize(words), lm) >= orig;
  }
  EXPECT_GE(worse, 90);
}

TEST(NGramLMTest, WordScore) {
  const NGramLM& lm = *BundledResources().lm;
  const Tokens t = {"the", "film", "is", "marvelous"};
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_LE(LmWordScore(t, i, lm), 0.0);
  EXPECT_DOUBLE_EQ(LmWordScore(t, 0, lm),
                   lm.LogProb(std::span<const std::string>{}, "the"));
  EXPECT_THROW(LmWordScore(t, 4, lm), IndexOutOfRange);
}

TEST(NGramLMTest, InCorpusBigramsBeatUnseen) {
  const NGramLM& lm = *BundledResources().lm;
  const auto corpus = ::advforge::testing::BundledDataset("corpus.tsv");
  int checked = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    const auto words = SplitWords(corpus[i].text);
    if (words.size() < 2) continue;
    const Tokens seen = {words[0], words[1]};
    const Tokens unseen = {words[0], "zzzunseenzzz"};
    EXPECT_GE(LmWordScore(seen, 1, lm), LmWordScore(unseen, 1, lm));
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(NGramLMTest, SerializeRoundTrip) {
  ::advforge::testing::TempDir dir;
  const NGramLM& lm = *BundledResources().lm;
  lm.Save(dir.path() / "lm.json");
  const NGramLM back = NGramLM::Load(dir.path() / "lm.json");
  EXPECT_EQ(back.Serialize(), lm.Serialize());
  const Tokens t = {"a", "marvelous", "film"};
  EXPECT_DOUBLE_EQ(back.LogProb(t, "film"), lm.LogProb(t, "film"));
}

TEST(GrammaticalityTest, UnconfiguredProvider) {
  EXPECT_THROW(Grammaticality("text", nullptr), ProviderUnavailable);
}

}  // namespace
}  // namespace advforge
