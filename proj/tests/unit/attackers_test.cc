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


// Per-attacker behavior against constructed instances whose answer is known
// by exhaustive search or closed form.

#include <algorithm>
#include <cmath>

#include "advforge/attack.h"
#include "attackers/common.h"
#include "gtest/gtest.h"
#include "support/micro.h"
#include "support/test_support.h"

namespace advforge {
namespace {

using ::advforge::testing::BestSingleSubstitution;
using ::advforge::testing::BruteForceFlippable;
using ::advforge::testing::BuildMicroInstance;
using ::advforge::testing::BundledDataset;
using ::advforge::testing::BundledResources;
using ::advforge::testing::MakeLinearVictim;
using ::advforge::testing::MicroInstance;
using ::advforge::testing::RandomMicroInstance;
using ::advforge::testing::ToyVictim;

AttackResult Attack(std::string_view id, const MicroInstance& m,
                    AttackConfig config = {}) {
  return RunAttack(*MakeAttacker(id), *m.victim, m.sample, config, m.resources);
}

bool Flips(const Victim& victim, const std::string& text, int label) {
  return victim.Predict(std::span<const std::string>(&text, 1))[0] != label;
}

bool Oracle(const MicroInstance& m) {
  return BruteForceFlippable(*m.victim, m.words, m.space, m.sample.label);
}

std::vector<Sample> CorrectSamples(std::size_t n) {
  std::vector<Sample> out;
  for (const Sample& s : BundledDataset("corpus_test.tsv")) {
    if (out.size() == n) break;
    if (!Flips(ToyVictim(), s.text, s.label)) out.push_back(s);
  }
  return out;
}

// --- TextFooler -------------------------------------------------------------

TEST(TextFoolerTest, NothingToPerturb) {
  MicroInstance m = BuildMicroInstance({"w0"}, {{"w0a"}}, {{"w0", 1.0}}, 0.5);
  m.sample = MakeSample("the the", 1, *m.resources.pipeline);
  const AttackResult r = Attack("textfooler", m);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(TextFoolerTest, GoodFineExampleFollowsOracle) {
  for (double bias : {0.0, -0.5}) {
    const MicroInstance m = BuildMicroInstance(
        {"good"}, {{"fine"}}, {{"good", 2.0}, {"bad", -2.0}, {"fine", 0.1}},
        bias);
    ASSERT_EQ(m.sample.label, 1);
    const AttackResult r = Attack("textfooler", m);
    EXPECT_EQ(r.success, Oracle(m)) << bias;
    if (r.success) {
      EXPECT_EQ(*r.adversarial_text, "fine");
    }
  }
  // The flipping case exists.
  EXPECT_TRUE(Oracle(BuildMicroInstance(
      {"good"}, {{"fine"}}, {{"good", 2.0}, {"fine", 0.1}}, -0.5)));
}

TEST(TextFoolerTest, LinearMicroInstancesMatchOracle) {
  int flippable = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed);
    const AttackResult r = Attack("textfooler", m);
    const bool oracle = Oracle(m);
    flippable += oracle;
    EXPECT_EQ(r.success, oracle) << "seed " << seed;
    if (r.success) {
      EXPECT_TRUE(Flips(*m.victim, *r.adversarial_text, m.sample.label));
    }
  }
  // Both outcomes are exercised.
  EXPECT_GT(flippable, 20);
  EXPECT_LT(flippable, 180);
}

TEST(TextFoolerTest, FlipChoiceMaximizesSimilarity) {
  // Both candidates flip; the one closer in embedding space wins.
  MicroInstance m = BuildMicroInstance(
      {"w0"}, {{"w0a", "w0b"}}, {{"w0", 1.0}, {"w0a", -3.0}, {"w0b", -1.0}},
      0.0);
  const AttackResult r = Attack("textfooler", m);
  ASSERT_TRUE(r.success);
  const double sa = SemanticSimilarity("w0", "w0a", *m.resources.embeddings,
                                       m.resources.pipeline.get());
  const double sb = SemanticSimilarity("w0", "w0b", *m.resources.embeddings,
                                       m.resources.pipeline.get());
  EXPECT_EQ(*r.adversarial_text, sb > sa ? "w0b" : "w0a");
}

TEST(TextFoolerTest, TraceRecordsImportance) {
  AttackConfig config;
  config.trace = true;
  const MicroInstance m = RandomMicroInstance(5);
  const AttackResult r = Attack("textfooler", m, config);
  ASSERT_TRUE(r.trace);
  EXPECT_EQ(r.trace->values.at("importance").size(), m.words.size());
}

// --- PWWS -------------------------------------------------------------------

TEST(PwwsTest, NoSynonymsCostsOneProbePerWordPlusOne) {
  const MicroInstance m = BuildMicroInstance(
      {"w0", "w1", "w2"}, {{}, {}, {}},
      {{"w0", 1.0}, {"w1", 1.0}, {"w2", 1.0}}, 0.0);
  const AttackResult r = Attack("pwws", m);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.total(), 3u + 1u);
}

TEST(PwwsTest, DecisiveSynonymFound) {
  const MicroInstance m = BuildMicroInstance(
      {"w0", "w1"}, {{"w0a"}, {"w1a"}},
      {{"w0", 1.0}, {"w1", 1.0}, {"w0a", -3.0}, {"w1a", 0.5}}, -1.0);
  ASSERT_EQ(m.sample.label, 1);
  ASSERT_TRUE(Oracle(m));
  const AttackResult r = Attack("pwws", m);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(*r.adversarial_text, "w0a w1");
}

TEST(PwwsTest, SinglePositionMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed, 1, 3);
    EXPECT_EQ(Attack("pwws", m).success, Oracle(m)) << seed;
  }
}

TEST(PwwsTest, SaliencySoftmaxSumsToOne) {
  AttackConfig config;
  config.trace = true;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const AttackResult r = Attack("pwws", RandomMicroInstance(seed), config);
    ASSERT_TRUE(r.trace);
    for (double v : r.trace->values.at("softmax_sum")) EXPECT_NEAR(v, 1.0, 1e-6);
  }
  for (const Sample& s : CorrectSamples(5)) {
    const AttackResult r = RunAttack(*MakeAttacker("pwws"), ToyVictim(), s,
                                     config, BundledResources());
    for (double v : r.trace->values.at("softmax_sum")) EXPECT_NEAR(v, 1.0, 1e-6);
  }
}

// --- Genetic ----------------------------------------------------------------

TEST(GeneticTest, EmptySpaceFails) {
  const MicroInstance m =
      BuildMicroInstance({"w0", "w1"}, {{}, {}}, {{"w0", 1.0}}, 0.0);
  const AttackResult r = Attack("genetic", m);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(GeneticTest, BudgetFiftyHolds) {
  AttackConfig config;
  config.budget = 50;
  for (const Sample& s : CorrectSamples(10)) {
    const AttackResult r = RunAttack(*MakeAttacker("genetic"), ToyVictim(), s,
                                     config, BundledResources());
    EXPECT_LE(r.queries.total(), 50u);
  }
}

TEST(GeneticTest, FindsCombinationFlipAcrossSeeds) {
  // Neither substitution alone flips; both together do.
  const MicroInstance m = BuildMicroInstance(
      {"w0", "w1"}, {{"w0a", "w0b"}, {"w1a", "w1b"}},
      {{"w0", 1.0}, {"w1", 1.0}, {"w0a", -0.8}, {"w0b", 0.5}, {"w1a", -0.8},
       {"w1b", 0.3}},
      0.0);
  ASSERT_TRUE(Oracle(m));
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& c : m.space[i]) {
      std::vector<std::string> single = m.words;
      single[i] = c;
      ASSERT_FALSE(Flips(*m.victim, Detokenize(single), 1));
    }
  }
  AttackConfig config;
  // The micro LM has no useful statistics; keep every candidate.
  config.lm_threshold = -1e9;
  int found = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    config.seed = seed;
    const AttackResult r = Attack("genetic", m, config);
    if (r.success) {
      ++found;
      EXPECT_EQ(*r.adversarial_text, "w0a w1a");
    }
  }
  EXPECT_GE(found, 95);
}

TEST(GeneticTest, SuccessImpliesOracle) {
  AttackConfig config;
  config.lm_threshold = -1e9;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed);
    const AttackResult r = Attack("genetic", m, config);
    if (r.success) EXPECT_TRUE(Oracle(m)) << seed;
  }
}

// --- SememePSO --------------------------------------------------------------

TEST(SememePsoTest, EmptySpaceFailsWithMinimalQueries) {
  const MicroInstance m =
      BuildMicroInstance({"w0", "w1"}, {{}, {}}, {{"w0", 1.0}}, 0.0);
  const AttackResult r = Attack("sememe-pso", m);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(SememePsoTest, SinglePositionIsEnumeration) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed, 1, 3);
    const AttackResult r = Attack("sememe-pso", m);
    EXPECT_EQ(r.success, Oracle(m)) << seed;
    // One probe of the original plus one per candidate, plus verification.
    EXPECT_LE(r.queries.total(), 1 + m.space[0].size() + 1);
  }
}

TEST(SememePsoTest, InertiaScheduleEndpoints) {
  const MicroInstance m = BuildMicroInstance(
      {"w0", "w1"}, {{"w0a"}, {"w1a"}},
      {{"w0", 1.0}, {"w1", 1.0}, {"w0a", 0.9}, {"w1a", 0.8}}, 0.0);
  ASSERT_FALSE(Oracle(m));
  AttackConfig config;
  config.trace = true;
  const AttackResult r = Attack("sememe-pso", m, config);
  ASSERT_TRUE(r.trace);
  const std::vector<double>& omega = r.trace->values.at("omega");
  ASSERT_EQ(omega.size(), 20u);
  EXPECT_EQ(omega.front(), 0.8);
  EXPECT_EQ(omega.back(), 0.2);
  for (std::size_t t = 1; t < omega.size(); ++t) EXPECT_LT(omega[t], omega[t - 1]);
}

// --- HotFlip ----------------------------------------------------------------

TEST(HotFlipTest, ZeroGradientFailsInOneStep) {
  const MicroInstance m = BuildMicroInstance(
      {"w0"}, {{"w0a"}}, {{"w0", 0.0}, {"w0a", 0.0}}, 1.0);
  ASSERT_EQ(m.sample.label, 1);
  const AttackResult r = Attack("hotflip", m);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.grad_queries(), 1u);
}

TEST(HotFlipTest, FirstFlipIsExhaustiveBestOnLinearVictim) {
  AttackConfig config;
  config.trace = true;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed);
    const AttackResult r = Attack("hotflip", m, config);
    const auto best =
        BestSingleSubstitution(*m.victim, m.words, m.space, m.sample.label);
    ASSERT_TRUE(best);
    const double p0 = m.victim->Probabilities(std::span<const std::string>(
        &m.sample.text, 1))[0].probabilities[1];
    ASSERT_TRUE(r.trace);
    if (best->label_prob < p0) {
      ASSERT_FALSE(r.trace->texts.empty()) << seed;
      EXPECT_EQ(r.trace->texts.front(), best->text) << seed;
    } else {
      EXPECT_TRUE(r.trace->texts.empty()) << seed;
    }
    EXPECT_EQ(r.success, Oracle(m)) << seed;
  }
}

// --- FD ---------------------------------------------------------------------

TEST(FdTest, ZeroEpsilonTakesNextNearest) {
  const MicroInstance m = BuildMicroInstance(
      {"w0"}, {{"w0a", "w0b"}}, {{"w0", 1.0}, {"w0a", -2.0}, {"w0b", -3.0}},
      0.0);
  AttackConfig config;
  config.fd_epsilon = 0.0;
  const AttackResult r = Attack("fd", m, config);
  // Both candidates are equidistant from w0; the smaller word wins the tie.
  ASSERT_TRUE(r.success);
  EXPECT_EQ(*r.adversarial_text, "w0a");
}

TEST(FdTest, ZeroGradientFails) {
  const MicroInstance m = BuildMicroInstance(
      {"w0"}, {{"w0a"}}, {{"w0", 0.0}, {"w0a", 0.0}}, 1.0);
  const AttackResult r = Attack("fd", m);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.prob_queries(), 1u);
  EXPECT_EQ(r.queries.grad_queries(), 1u);
}

TEST(FdTest, SinglePositionAgreesWithOracle) {
  const std::vector<std::map<std::string, double>> cases = {
      {{"w0", 1.0}, {"w0a", 0.5}, {"w0b", -3.0}},
      {{"w0", 1.0}, {"w0a", 0.5}, {"w0b", 0.2}},
      {{"w0", 1.0}, {"w0a", -2.0}, {"w0b", 0.7}},
  };
  for (const auto& weights : cases) {
    const MicroInstance m =
        BuildMicroInstance({"w0"}, {{"w0a", "w0b"}}, weights, -0.5);
    ASSERT_EQ(m.sample.label, 1);
    EXPECT_EQ(Attack("fd", m).success, Oracle(m));
  }
}

TEST(FdTest, SuccessImpliesOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed);
    const AttackResult r = Attack("fd", m);
    if (r.success) {
      EXPECT_TRUE(Oracle(m));
      EXPECT_TRUE(Flips(*m.victim, *r.adversarial_text, m.sample.label));
    }
  }
}

// --- UAT --------------------------------------------------------------------

TEST(UatTest, ZeroGradientKeepsInitialTrigger) {
  const auto victim = MakeLinearVictim({{"good", 0.0}, {"film", 0.0}}, 1.0);
  const auto pipeline = BundledResources().pipeline;
  const std::vector<Sample> samples = {MakeSample("good film", 1, *pipeline),
                                       MakeSample("film", 1, *pipeline)};
  const UatOutcome out = AttackUat(*victim, samples, {}, BundledResources());
  EXPECT_EQ(out.trigger, (std::vector<std::string>{"the", "the", "the"}));
}

TEST(UatTest, LinearVictimTriggerIsWeightArgmin) {
  const std::map<std::string, double> weights = {
      {"good", 2.0},   {"great", 1.5}, {"film", 0.1},
      {"dull", -1.0},  {"awful", -2.5}, {"boring", -1.8}};
  const auto victim = MakeLinearVictim(weights, 0.0);
  const auto pipeline = BundledResources().pipeline;
  std::vector<Sample> samples;
  for (const char* t : {"good film", "great film", "good", "great good film"}) {
    samples.push_back(MakeSample(t, 1, *pipeline));
  }
  // Closed form: every slot takes the word with the largest class-0 minus
  // class-1 weight.
  const auto argmin = std::min_element(
      weights.begin(), weights.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const UatOutcome out = AttackUat(*victim, samples, {}, BundledResources());
  EXPECT_EQ(out.trigger, std::vector<std::string>(3, argmin->first));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string text = ApplyTrigger(out.trigger, samples[i].text);
    EXPECT_EQ(out.results[i].success, Flips(*victim, text, 1));
  }
}

TEST(UatTest, FlagsMatchReverification) {
  const std::vector<Sample> samples = CorrectSamples(32);
  const UatOutcome out = AttackUat(ToyVictim(), samples, {}, BundledResources());
  ASSERT_EQ(out.results.size(), samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string text = ApplyTrigger(out.trigger, samples[i].text);
    EXPECT_EQ(out.results[i].success, Flips(ToyVictim(), text, samples[i].label));
  }
}

// --- TextBugger -------------------------------------------------------------

TEST(TextBuggerTest, OneCharWordsUseNeighborOnly) {
  const MicroInstance m =
      BuildMicroInstance({"x"}, {{"y"}}, {{"x", 1.0}, {"y", -2.0}}, 0.0);
  std::mt19937_64 rng(0);
  EXPECT_EQ(internal::GenerateBugs("x", m.resources, 0.5, rng),
            std::vector<std::string>{"y"});
  const AttackResult r = Attack("textbugger", m);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(*r.adversarial_text, "y");
}

TEST(TextBuggerTest, BlackBoxNeverAsksForGradients) {
  AttackConfig config;
  config.textbugger_mode = TextBuggerMode::kBlackBox;
  for (const Sample& s : CorrectSamples(10)) {
    const AttackResult r = RunAttack(*MakeAttacker("textbugger"), ToyVictim(),
                                     s, config, BundledResources());
    EXPECT_EQ(r.queries.grad_queries(), 0u);
  }
}

TEST(TextBuggerTest, WhiteBoxUsesOneGradient) {
  const Sample s = CorrectSamples(1).front();
  const AttackResult r = RunAttack(*MakeAttacker("textbugger"), ToyVictim(), s,
                                   {}, BundledResources());
  EXPECT_EQ(r.queries.grad_queries(), 1u);
}

TEST(TextBuggerTest, StepPicksBestOfBugSet) {
  const MicroInstance m = BuildMicroInstance(
      {"word"}, {{"wordy"}},
      {{"word", 1.0}, {"wordy", 0.4}, {"w0rd", -0.3}, {"wrd", 0.1},
       {"wrod", 0.6}},
      -0.5);
  ASSERT_EQ(m.sample.label, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AttackConfig config;
    config.seed = seed;
    config.trace = true;
    config.textbugger_mode = TextBuggerMode::kBlackBox;
    const AttackResult r = Attack("textbugger", m, config);

    std::mt19937_64 rng(seed);
    const auto bugs = internal::GenerateBugs("word", m.resources, 0.5, rng);
    ASSERT_LE(bugs.size(), 5u);
    double best = 1.0;
    for (const std::string& b : bugs) {
      best = std::min(best, m.victim->Probabilities(std::span<const std::string>(
                                &b, 1))[0].probabilities[1]);
    }
    ASSERT_TRUE(r.trace);
    ASSERT_EQ(r.trace->values.at("best_bug_prob").size(), 1u);
    EXPECT_DOUBLE_EQ(r.trace->values.at("best_bug_prob")[0], best);
    EXPECT_EQ(r.success, best < 0.5);
  }
}

// --- DeepWordBug ------------------------------------------------------------

TEST(DeepWordBugTest, ZeroEditsFailsImmediately) {
  AttackConfig config;
  config.max_edits = 0;
  const Sample s = CorrectSamples(1).front();
  const AttackResult r = RunAttack(*MakeAttacker("deepwordbug"), ToyVictim(),
                                   s, config, BundledResources());
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.adversarial_text);
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(DeepWordBugTest, StopwordsAreScored) {
  const std::string text = "the of and to";
  const int label =
      ToyVictim().Predict(std::span<const std::string>(&text, 1))[0];
  const Sample s = MakeSample(text, label, *BundledResources().pipeline);
  const AttackResult r = RunAttack(*MakeAttacker("deepwordbug"), ToyVictim(),
                                   s, {}, BundledResources());
  // Initial query plus one replace-one probe per token at least.
  EXPECT_GE(r.queries.prob_queries(), 1u + 4u);
}

TEST(DeepWordBugTest, EditCapHolds) {
  AttackConfig config;
  config.max_edits = 2;
  for (const Sample& s : CorrectSamples(20)) {
    const AttackResult r = RunAttack(*MakeAttacker("deepwordbug"), ToyVictim(),
                                     s, config, BundledResources());
    if (r.success) EXPECT_LE(Levenshtein(s.text, *r.adversarial_text), 2u);
  }
}

TEST(DeepWordBugTest, SeedFixesOutput) {
  const Sample s = CorrectSamples(3).back();
  AttackConfig config;
  config.seed = 11;
  const AttackResult first = RunAttack(*MakeAttacker("deepwordbug"),
                                       ToyVictim(), s, config,
                                       BundledResources());
  for (int i = 0; i < 10; ++i) {
    const AttackResult again = RunAttack(*MakeAttacker("deepwordbug"),
                                         ToyVictim(), s, config,
                                         BundledResources());
    EXPECT_EQ(again.adversarial_text, first.adversarial_text);
    EXPECT_TRUE(SameOutcome(first, again));
  }
}

TEST(DeepWordBugTest, TemporalScorersRun) {
  const Sample s = CorrectSamples(1).front();
  for (WordBugScorer scorer :
       {WordBugScorer::kTemporalHead, WordBugScorer::kTemporalTail,
        WordBugScorer::kCombined}) {
    AttackConfig config;
    config.wordbug_scorer = scorer;
    const AttackResult r = RunAttack(*MakeAttacker("deepwordbug"), ToyVictim(),
                                     s, config, BundledResources());
    EXPECT_GT(r.queries.prob_queries(), s.tokens.size());
  }
}

// --- VIPER ------------------------------------------------------------------

AttackResources AccentResources() {
  AttackResources res;
  res.visual = std::make_shared<const CharMap>(
      std::map<char32_t, std::vector<std::pair<char32_t, double>>>{
          {U'a', {{U'á', 1.0}}}});
  return res;
}

TEST(ViperTest, ZeroProbabilityChangesNothing) {
  const auto victim = MakeLinearVictim({{"aaa", 1.0}}, -0.5);
  const Sample s = MakeSample("aaa", 1, *BundledResources().pipeline);
  AttackConfig config;
  config.viper_p = 0.0;
  const AttackResult r =
      RunAttack(*MakeAttacker("viper"), *victim, s, config, AccentResources());
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.failure_reason, "unchanged");
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(ViperTest, ForcedSubstitution) {
  const auto victim = MakeLinearVictim({{"aaa", 1.0}}, -0.5);
  const Sample s = MakeSample("aaa", 1, *BundledResources().pipeline);
  AttackConfig config;
  config.viper_p = 1.0;
  const AttackResult r =
      RunAttack(*MakeAttacker("viper"), *victim, s, config, AccentResources());
  ASSERT_TRUE(r.success);
  EXPECT_EQ(*r.adversarial_text, "ááá");
}

TEST(ViperTest, OneQueryRegardlessOfLength) {
  std::string text;
  for (int n = 1; n <= 40; ++n) {
    text += (n > 1 ? " " : "") + std::string("word");
    const int label =
        ToyVictim().Predict(std::span<const std::string>(&text, 1))[0];
    const Sample s = MakeSample(text, label, *BundledResources().pipeline);
    const AttackResult r = RunAttack(*MakeAttacker("viper"), ToyVictim(), s, {},
                                     BundledResources());
    EXPECT_EQ(r.queries.total(), 1u);
  }
}

// --- SEA rules --------------------------------------------------------------

AttackResources RuleResources(std::vector<ParaphraseRules::Rule> rules) {
  AttackResources res;
  res.pipeline = BundledResources().pipeline;
  res.rules = std::make_shared<const ParaphraseRules>(std::move(rules));
  return res;
}

TEST(SeaRulesTest, NoMatchMeansOneQuery) {
  const auto victim = MakeLinearVictim({{"good", 2.0}}, 0.0);
  const AttackResources res = RuleResources({{{"terrible"}, {"awful"}}});
  const Sample s = MakeSample("good movie", 1, *res.pipeline);
  const AttackResult r = RunAttack(*MakeAttacker("sea-rules"), *victim, s, {}, res);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(SeaRulesTest, FirstFlippingRuleWins) {
  const auto victim = MakeLinearVictim(
      {{"good", 2.0}, {"great", 2.0}, {"fine", -3.0}, {"flick", -5.0}}, 0.0);
  const AttackResources res = RuleResources({
      {{"good", "$1"}, {"great", "$1"}},
      {{"good", "$1"}, {"fine", "$1"}},
      {{"$1", "movie"}, {"$1", "flick"}},
  });
  const Sample s = MakeSample("good movie", 1, *res.pipeline);
  const AttackResult r = RunAttack(*MakeAttacker("sea-rules"), *victim, s, {}, res);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(*r.adversarial_text, "fine movie");
  EXPECT_EQ(r.queries.prob_queries(), 0u);
  EXPECT_EQ(r.queries.grad_queries(), 0u);
  // Initial check, two rule probes, verification.
  EXPECT_EQ(r.queries.pred_queries(), 4u);
}

}  // namespace
}  // namespace advforge
