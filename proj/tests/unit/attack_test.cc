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


#include <set>

#include "advforge/attack.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "support/micro.h"
#include "support/test_support.h"

namespace advforge {
namespace {

using ::advforge::testing::BundledDataset;
using ::advforge::testing::BundledResources;
using ::advforge::testing::CountingVictim;
using ::advforge::testing::ToyVictim;

// Gradient-free view of any victim.
class NoGradVictim final : public Victim {
 public:
  explicit NoGradVictim(const Victim& inner) : inner_(inner) {}
  std::string name() const override { return "nograd"; }
  int num_labels() const override { return inner_.num_labels(); }
  std::vector<VictimOutput> Probabilities(
      std::span<const std::string> texts) const override {
    return inner_.Probabilities(texts);
  }

 private:
  const Victim& inner_;
};

std::vector<Sample> CorrectSamples(const Victim& victim, std::size_t n) {
  std::vector<Sample> out;
  for (const Sample& s : BundledDataset("corpus_test.tsv")) {
    if (out.size() == n) break;
    if (victim.Predict(std::span<const std::string>(&s.text, 1))[0] == s.label) {
      out.push_back(s);
    }
  }
  return out;
}

TEST(AttackConfigTest, DefaultsMatchPublishedSettings) {
  const AttackConfig c;
  EXPECT_EQ(c.budget, 500u);
  EXPECT_EQ(c.neighbors, 50u);
  EXPECT_DOUBLE_EQ(c.min_cos, 0.5);
  EXPECT_EQ(c.population, 60u);
  EXPECT_EQ(c.generations, 20u);
  EXPECT_EQ(c.particles, 60u);
  EXPECT_EQ(c.pso_iterations, 20u);
  EXPECT_DOUBLE_EQ(c.omega_max, 0.8);
  EXPECT_DOUBLE_EQ(c.omega_min, 0.2);
  EXPECT_DOUBLE_EQ(c.fd_epsilon, 0.1);
  EXPECT_DOUBLE_EQ(c.viper_p, 0.3);
  EXPECT_EQ(c.trigger_length, 3u);
  EXPECT_EQ(c.uat_batch, 16u);
  EXPECT_EQ(c.wordbug_top_m, 5u);
  EXPECT_EQ(c.unk, "<unk>");
}

TEST(AttackConfigTest, OverlaysKnownKeys) {
  AttackConfig base;
  base.seed = 9;
  const AttackConfig c = ParseAttackConfig(
      R"({"budget": 10, "viper_p": 1.0, "textbugger_mode": "black-box",
          "wordbug_scorer": "combined", "trace": true})",
      base);
  EXPECT_EQ(c.budget, 10u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.viper_p, 1.0);
  EXPECT_EQ(c.textbugger_mode, TextBuggerMode::kBlackBox);
  EXPECT_EQ(c.wordbug_scorer, WordBugScorer::kCombined);
  EXPECT_TRUE(c.trace);
}

TEST(AttackConfigTest, RejectsBadInput) {
  EXPECT_THROW(ParseAttackConfig(R"({"budgett": 3})"), ConfigError);
  EXPECT_THROW(ParseAttackConfig(R"({"budget": 0})"), ConfigError);
  EXPECT_THROW(ParseAttackConfig(R"({"budget": -1})"), ConfigError);
  EXPECT_THROW(ParseAttackConfig(R"({"budget": "5"})"), ConfigError);
  EXPECT_THROW(ParseAttackConfig(R"({"viper_p": 1.5})"), ConfigError);
  EXPECT_THROW(ParseAttackConfig(R"({"textbugger_mode": "grey"})"),
               ConfigError);
  EXPECT_THROW(ParseAttackConfig("[1]"), ConfigError);
  EXPECT_THROW(ParseAttackConfig("{"), ConfigError);
}

TEST(RegistryTest, IdsInOrder) {
  EXPECT_EQ(AttackerIds(),
            (std::vector<std::string>{"textfooler", "pwws", "genetic",
                                      "sememe-pso", "hotflip", "fd", "uat",
                                      "textbugger", "deepwordbug", "viper",
                                      "sea-rules"}));
  for (const std::string& id : AttackerIds()) {
    EXPECT_EQ(MakeAttacker(id)->info().id, id);
  }
}

TEST(RegistryTest, UnknownIdListsValidOnes) {
  try {
    MakeAttacker("deepfool");
    FAIL();
  } catch (const UnknownAttacker& e) {
    const std::string msg = e.what();
    for (const std::string& id : AttackerIds()) {
      EXPECT_NE(msg.find(id), std::string::npos) << id;
    }
  }
}

TEST(RegistryTest, ClassesFollowTheTaxonomy) {
  using A = Accessibility;
  using P = Perturbation;
  const std::map<std::string, std::pair<std::vector<A>, std::vector<P>>>
      expected = {
          {"textfooler", {{A::kScore}, {P::kWord}}},
          {"pwws", {{A::kScore}, {P::kWord}}},
          {"genetic", {{A::kScore}, {P::kWord}}},
          {"sememe-pso", {{A::kScore}, {P::kWord}}},
          {"hotflip", {{A::kGradient}, {P::kWord, P::kChar}}},
          {"fd", {{A::kGradient}, {P::kWord}}},
          {"uat", {{A::kGradient}, {P::kWord, P::kChar}}},
          {"textbugger", {{A::kGradient, A::kScore}, {P::kWord, P::kChar}}},
          {"deepwordbug", {{A::kScore}, {P::kChar}}},
          {"viper", {{A::kBlind}, {P::kChar}}},
          {"sea-rules", {{A::kDecision}, {P::kSentence}}},
      };
  for (const auto& [id, classes] : expected) {
    const AttackerInfo& info = MakeAttacker(id)->info();
    EXPECT_EQ(info.accessibility, classes.first) << id;
    EXPECT_EQ(info.perturbation, classes.second) << id;
  }
}

TEST(PolicyTest, ChannelsPerClass) {
  auto tuple = [](AccessPolicy p) {
    return std::make_tuple(p.prob, p.pred, p.grad);
  };
  EXPECT_EQ(tuple(PolicyFor(Accessibility::kGradient)),
            std::make_tuple(true, true, true));
  EXPECT_EQ(tuple(PolicyFor(Accessibility::kScore)),
            std::make_tuple(true, true, false));
  EXPECT_EQ(tuple(PolicyFor(Accessibility::kDecision)),
            std::make_tuple(false, true, false));
  EXPECT_EQ(tuple(PolicyFor(Accessibility::kBlind)),
            std::make_tuple(false, false, false));
}

TEST(CompatibilityTest, GradientAttackersNeedGradients) {
  const NoGradVictim victim(ToyVictim());
  const AttackConfig config;
  for (const char* id : {"hotflip", "fd", "uat"}) {
    EXPECT_THROW(CheckCompatible(*MakeAttacker(id), victim, config,
                                 BundledResources()),
                 IncompatibleAttacker)
        << id;
  }
  // TextBugger falls back to its black-box mode.
  EXPECT_NO_THROW(CheckCompatible(*MakeAttacker("textbugger"), victim, config,
                                  BundledResources()));
  AttackConfig white = config;
  white.textbugger_mode = TextBuggerMode::kWhiteBox;
  EXPECT_THROW(CheckCompatible(*MakeAttacker("textbugger"), victim, white,
                               BundledResources()),
               IncompatibleAttacker);
}

TEST(CompatibilityTest, IncompatibleRaisedBeforeAnyQuery) {
  const NoGradVictim inner(ToyVictim());
  const CountingVictim victim(inner);
  const Sample s = CorrectSamples(ToyVictim(), 1).front();
  EXPECT_THROW(
      RunAttack(*MakeAttacker("hotflip"), victim, s, {}, BundledResources()),
      IncompatibleAttacker);
  EXPECT_EQ(victim.calls(), 0u);
}

TEST(CompatibilityTest, MissingResourcesAreConfigErrors) {
  const AttackResources empty;
  for (const std::string& id : AttackerIds()) {
    if (id == "uat" || id == "deepwordbug") continue;
    EXPECT_THROW(CheckCompatible(*MakeAttacker(id), ToyVictim(), {}, empty),
                 ConfigError)
        << id;
  }
}

TEST(RunAttackTest, MisclassifiedSampleIsNotAttacked) {
  Sample s = CorrectSamples(ToyVictim(), 1).front();
  s.label = 1 - s.label;
  const AttackResult r = RunAttack(*MakeAttacker("textfooler"), ToyVictim(), s,
                                   {}, BundledResources());
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.failure_reason, "misclassified");
  EXPECT_EQ(r.queries.total(), 1u);
}

TEST(RunAttackTest, ZeroBudgetRejected) {
  AttackConfig config;
  config.budget = 0;
  const Sample s = CorrectSamples(ToyVictim(), 1).front();
  EXPECT_THROW(RunAttack(*MakeAttacker("pwws"), ToyVictim(), s, config,
                         BundledResources()),
               ConfigError);
}

TEST(RunAttackTest, RemoteGradientRefusalSurfacesAsError) {
  ::advforge::testing::StubServer stub;
  stub.server().Get("/info", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"name": "linear-bow", "num_labels": 2,
                        "supports_gradient": true, "embed_dim": 25})",
                    "application/json");
  });
  stub.server().Post(
      "/probabilities", [](const httplib::Request& req, httplib::Response& res) {
        const auto texts = nlohmann::json::parse(req.body)["texts"];
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < texts.size(); ++i) {
          rows.push_back({0.25, 0.75});
        }
        res.set_content(nlohmann::json{{"probabilities", rows}}.dump(),
                        "application/json");
      });
  stub.server().Post("/gradient", [](const httplib::Request&,
                                      httplib::Response& res) {
    res.status = 501;
    res.set_content(R"({"error": "model has no gradient"})",
                    "application/json");
  });
  stub.Start();
  const RemoteVictim victim(stub.url());
  const Sample s = MakeSample("a good film", 1, *BundledResources().pipeline);
  EXPECT_THROW(
      RunAttack(*MakeAttacker("hotflip"), victim, s, {}, BundledResources()),
      GradientUnsupported);
}

// Every attacker on real bundled samples: the result invariants, the ledger
// contract of its accessibility class and exact agreement between ledger
// and the texts that reached the model.
class AllAttackersTest : public ::testing::TestWithParam<std::string> {};

TEST_P(AllAttackersTest, ContractsHoldOnBundledSamples) {
  const auto attacker = MakeAttacker(GetParam());
  CountingVictim victim(ToyVictim());
  for (std::size_t budget : {500u, 10u, 1u}) {
    AttackConfig config;
    config.budget = budget;
    config.seed = 7;
    const Accessibility mode = attacker->Mode(victim, config);
    for (const Sample& s : CorrectSamples(ToyVictim(), 6)) {
      victim.reset();
      const AttackResult r =
          RunAttack(*attacker, victim, s, config, BundledResources());
      const QueryLedger& q = r.queries;
      EXPECT_LE(q.total(), budget);
      EXPECT_EQ(victim.calls(), q.total());
      switch (mode) {
        case Accessibility::kBlind:
          EXPECT_EQ(q.total(), 1u);
          EXPECT_EQ(q.pred_queries(), 1u);
          break;
        case Accessibility::kDecision:
          EXPECT_EQ(q.prob_queries() + q.grad_queries(), 0u);
          break;
        case Accessibility::kScore:
          EXPECT_EQ(q.grad_queries(), 0u);
          break;
        case Accessibility::kGradient:
          break;
      }
      EXPECT_EQ(r.success, r.adversarial_text.has_value());
      if (r.success) {
        EXPECT_NE(*r.adversarial_text, s.text);
        EXPECT_NE(ToyVictim().Predict(std::span<const std::string>(
                      &*r.adversarial_text, 1))[0],
                  s.label);
        EXPECT_TRUE(r.failure_reason.empty());
      } else {
        EXPECT_FALSE(r.failure_reason.empty());
      }
    }
  }
}

TEST_P(AllAttackersTest, Deterministic) {
  const auto attacker = MakeAttacker(GetParam());
  AttackConfig config;
  config.seed = 3;
  config.trace = true;
  for (const Sample& s : CorrectSamples(ToyVictim(), 3)) {
    const AttackResult a =
        RunAttack(*attacker, ToyVictim(), s, config, BundledResources());
    const AttackResult b =
        RunAttack(*attacker, ToyVictim(), s, config, BundledResources());
    EXPECT_TRUE(SameOutcome(a, b)) << s.text;
  }
}

TEST_P(AllAttackersTest, TraceOnlyWhenRequested) {
  const auto attacker = MakeAttacker(GetParam());
  const Sample s = CorrectSamples(ToyVictim(), 1).front();
  AttackConfig config;
  EXPECT_FALSE(
      RunAttack(*attacker, ToyVictim(), s, config, BundledResources()).trace);
  config.trace = true;
  EXPECT_TRUE(
      RunAttack(*attacker, ToyVictim(), s, config, BundledResources()).trace);
}

INSTANTIATE_TEST_SUITE_P(Registry, AllAttackersTest,
                         ::testing::ValuesIn(AttackerIds()),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST(UatDriverTest, LearningLedgerBoundedAndVerificationSingleQuery) {
  const auto samples = CorrectSamples(ToyVictim(), 20);
  AttackConfig config;
  config.budget = 40;
  const UatOutcome out =
      AttackUat(ToyVictim(), samples, config, BundledResources());
  EXPECT_LE(out.learning_queries.total(), 40u);
  EXPECT_EQ(out.trigger.size(), 3u);
  ASSERT_EQ(out.results.size(), samples.size());
  for (const AttackResult& r : out.results) {
    EXPECT_EQ(r.queries.total(), 1u);
    EXPECT_EQ(r.queries.pred_queries(), 1u);
  }
}

TEST(ApplyTriggerTest, Prepends) {
  const std::vector<std::string> t{"zoning", "tapping"};
  EXPECT_EQ(ApplyTrigger(t, "a film"), "zoning tapping a film");
  EXPECT_EQ(ApplyTrigger({}, "a film"), "a film");
}

}  // namespace
}  // namespace advforge
