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

#ifndef ADVFORGE_ATTACK_H_
#define ADVFORGE_ATTACK_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advforge/embedding.h"
#include "advforge/metrics.h"
#include "advforge/substitution.h"
#include "advforge/text.h"
#include "advforge/victim.h"

namespace advforge {

// What an attacker may observe of the victim.
enum class Accessibility { kGradient, kScore, kDecision, kBlind };
enum class Perturbation { kSentence, kWord, kChar };

std::string_view AccessibilityName(Accessibility a);
std::string_view PerturbationName(Perturbation p);

struct AttackerInfo {
  std::string id;
  // Every class the attacker can run under, strongest first.
  std::vector<Accessibility> accessibility;
  std::vector<Perturbation> perturbation;
};

enum class TextBuggerMode { kAuto, kWhiteBox, kBlackBox };
enum class WordBugScorer { kReplaceOne, kTemporalHead, kTemporalTail, kCombined };

// Search hyperparameters. Defaults follow the original attack papers.
struct AttackConfig {
  std::size_t budget = 500;
  std::uint64_t seed = 0;
  // Record intermediate texts and diagnostic values in AttackResult::trace.
  bool trace = false;

  // Marker used for deletion/replacement probes.
  std::string unk = "<unk>";

  // Embedding-neighbor substitution (TextFooler, HotFlip, FD, TextBugger).
  std::size_t neighbors = kDefaultNeighborCount;
  double min_cos = kDefaultMinCosine;

  // Genetic.
  std::size_t population = 60;
  std::size_t generations = 20;
  std::size_t genetic_neighbors = 8;
  double lm_threshold = -6.0;

  // SememePSO.
  std::size_t particles = 60;
  std::size_t pso_iterations = 20;
  double omega_max = 0.8;
  double omega_min = 0.2;
  double mutation = 0.06;

  // FD.
  double fd_epsilon = 0.1;

  // UAT.
  std::size_t trigger_length = 3;
  std::size_t uat_batch = 16;
  std::string trigger_init = "the";
  std::size_t uat_max_passes = 10;

  // TextBugger.
  TextBuggerMode textbugger_mode = TextBuggerMode::kAuto;

  // DeepWordBug.
  WordBugScorer wordbug_scorer = WordBugScorer::kReplaceOne;
  std::size_t wordbug_top_m = 5;
  std::size_t max_edits = 5;

  // VIPER.
  double viper_p = 0.3;
  std::size_t viper_k = 1;
};

// Overlays the keys present in a JSON object onto `base`. Unknown keys and
// ill-typed values raise ConfigError.
AttackConfig ParseAttackConfig(std::string_view json, AttackConfig base = {});

// Data an attacker may need. Attackers raise ConfigError when a resource
// they depend on is missing.
struct AttackResources {
  std::shared_ptr<const LanguagePipeline> pipeline;
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::shared_ptr<const SynonymProvider> synonyms;
  std::shared_ptr<const SememeInventory> sememes;
  std::shared_ptr<const CharMap> visual;
  std::shared_ptr<const CharMap> keyboard;
  std::shared_ptr<const ParaphraseRules> rules;
  std::shared_ptr<const NGramLM> lm;
};

struct AttackTrace {
  std::vector<std::string> texts;
  std::map<std::string, std::vector<double>> values;
};

struct AttackResult {
  Sample original;
  std::optional<std::string> adversarial_text;
  bool success = false;
  QueryLedger queries;
  std::chrono::nanoseconds elapsed{0};
  // Why a run ended without success ("budget", "exhausted", ...); empty on
  // success.
  std::string failure_reason;
  std::optional<AttackTrace> trace;
};

// Equal up to wall time.
bool SameOutcome(const AttackResult& a, const AttackResult& b);

// Everything a search can touch during one attack.
class AttackContext {
 public:
  AttackContext(VictimAccess& access, const Sample& sample,
                const AttackConfig& config, const AttackResources& resources,
                std::mt19937_64& rng, AttackTrace* trace)
      : access_(access),
        sample_(sample),
        config_(config),
        resources_(resources),
        rng_(rng),
        trace_(trace) {}

  VictimAccess& access() { return access_; }
  const Sample& sample() const { return sample_; }
  int label() const { return sample_.label; }
  const AttackConfig& config() const { return config_; }
  const AttackResources& resources() const { return resources_; }
  std::mt19937_64& rng() { return rng_; }

  // Victim output on the unmodified text, recorded by the driver before the
  // search starts. Absent for decision and blind attackers.
  const std::optional<VictimOutput>& original_output() const {
    return original_output_;
  }
  void set_original_output(VictimOutput out) {
    original_output_ = std::move(out);
  }

  // Scores every text or throws BudgetExhausted without spending anything.
  std::vector<VictimOutput> ProbAll(std::span<const std::string> texts);
  VictimOutput Prob(const std::string& text);
  // Scores as many leading texts as the budget allows. Throws
  // BudgetExhausted only when nothing fits.
  std::vector<VictimOutput> ProbSome(std::span<const std::string> texts);

  // No-ops unless tracing was requested.
  void TraceText(const std::string& text);
  void TraceValue(const std::string& key, double value);

 private:
  VictimAccess& access_;
  const Sample& sample_;
  const AttackConfig& config_;
  const AttackResources& resources_;
  std::mt19937_64& rng_;
  AttackTrace* trace_;
  std::optional<VictimOutput> original_output_;
};

class Attacker {
 public:
  virtual ~Attacker() = default;

  virtual const AttackerInfo& info() const = 0;

  // The class this attacker runs under for `victim` and `config`.
  virtual Accessibility Mode(const Victim& victim,
                             const AttackConfig& config) const;

  // Raises ConfigError when a required resource is missing.
  virtual void CheckResources(const AttackResources& resources) const = 0;

  // Returns the proposed adversarial text, or nullopt when the search gives
  // up. The driver verifies proposals; BudgetExhausted may escape.
  virtual std::optional<std::string> Search(AttackContext& ctx) const = 0;
};

// Channels an accessibility class may use.
AccessPolicy PolicyFor(Accessibility mode);

// Ids in registry order.
std::vector<std::string> AttackerIds();
// Throws UnknownAttacker listing the valid ids.
std::unique_ptr<Attacker> MakeAttacker(std::string_view id);

// Throws IncompatibleAttacker when the attacker needs gradients the victim
// does not offer, ConfigError when resources are missing.
void CheckCompatible(const Attacker& attacker, const Victim& victim,
                     const AttackConfig& config,
                     const AttackResources& resources);

// Runs one attack with its own ledger (budget from `config`, one query
// reserved for verification). The proposal is verified with a final
// get_pred; success requires a changed text and a flipped label.
AttackResult RunAttack(const Attacker& attacker, const Victim& victim,
                       const Sample& sample, const AttackConfig& config,
                       const AttackResources& resources);

// Universal trigger attack over a dataset. Trigger learning spends its own
// ledger (bounded by config.budget); each sample is then verified with one
// get_pred on the triggered text.
struct UatOutcome {
  std::vector<std::string> trigger;
  QueryLedger learning_queries;
  std::vector<AttackResult> results;
};

UatOutcome AttackUat(const Victim& victim, std::span<const Sample> samples,
                     const AttackConfig& config,
                     const AttackResources& resources);

// Learning phase only, charged against `access`.
std::vector<std::string> LearnTrigger(VictimAccess& access,
                                      std::span<const Sample> samples,
                                      const AttackConfig& config,
                                      const AttackResources& resources,
                                      AttackTrace* trace = nullptr);

std::string ApplyTrigger(std::span<const std::string> trigger,
                         const std::string& text);

// Verifies `trigger` on one sample with a fresh ledger: exactly one get_pred.
AttackResult TriggerResult(const Victim& victim, const Sample& sample,
                           std::span<const std::string> trigger,
                           const AttackConfig& config);

}  // namespace advforge

#endif  // ADVFORGE_ATTACK_H_
