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

// Universal adversarial triggers (Wallace et al.), word level: a fixed-length
// token sequence prepended to every input, learned by first-order slot
// updates averaged over a batch.

#include <algorithm>
#include <cmath>

#include "advforge/error.h"
#include "attackers/common.h"

namespace advforge {

namespace {

std::vector<std::string> CandidateVocabulary(const Victim& victim,
                                             const AttackResources& res) {
  std::vector<std::string> words = victim.Vocabulary();
  if (words.empty() && res.embeddings) words = res.embeddings->words();
  std::vector<std::string> out;
  for (const std::string& w : words) {
    // Each trigger token must survive re-segmentation as one token.
    const std::vector<std::string> parts = SplitWords(w);
    if (parts.size() == 1 && parts[0] == w && !IsPunctuationToken(w)) {
      out.push_back(internal::Lower(w));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double MeanLoss(const std::vector<VictimOutput>& outs,
                std::span<const int> labels) {
  double total = 0.0;
  for (std::size_t b = 0; b < outs.size(); ++b) {
    total -= std::log(std::max(
        outs[b].probabilities[static_cast<std::size_t>(labels[b])], 1e-300));
  }
  return total / static_cast<double>(outs.size());
}

}  // namespace

std::string ApplyTrigger(std::span<const std::string> trigger,
                         const std::string& text) {
  std::string prefix = Detokenize(trigger);
  if (prefix.empty()) return text;
  if (text.empty()) return prefix;
  return prefix + " " + text;
}

std::vector<std::string> LearnTrigger(VictimAccess& access,
                                      std::span<const Sample> samples,
                                      const AttackConfig& config,
                                      const AttackResources& resources,
                                      AttackTrace* trace) {
  std::vector<std::string> trigger(config.trigger_length,
                                   internal::Lower(config.trigger_init));
  if (samples.empty() || trigger.empty() || config.uat_batch == 0) {
    return trigger;
  }
  const Victim& victim = access.victim();
  const internal::GradientSpace space(victim, resources.embeddings.get());
  const std::vector<std::string> vocabulary =
      CandidateVocabulary(victim, resources);

  std::vector<std::span<const Sample>> batches;
  for (std::size_t b = 0; b < samples.size(); b += config.uat_batch) {
    batches.push_back(
        samples.subspan(b, std::min(config.uat_batch, samples.size() - b)));
  }

  auto batch_texts = [](std::span<const std::string> trig,
                        std::span<const Sample> batch) {
    std::vector<std::string> texts;
    for (const Sample& s : batch) texts.push_back(ApplyTrigger(trig, s.text));
    return texts;
  };

  std::size_t step = 0;
  try {
    for (std::size_t pass = 0; pass < config.uat_max_passes; ++pass) {
      bool changed = false;
      for (std::size_t slot = 0; slot < trigger.size(); ++slot, ++step) {
        const std::span<const Sample> batch = batches[step % batches.size()];
        std::vector<int> labels;
        for (const Sample& s : batch) labels.push_back(s.label);
        const std::vector<std::string> texts = batch_texts(trigger, batch);

        const std::vector<GradientOutput> grads = access.GetGrad(texts, labels);
        Vector mean(space.dim(), 0.0);
        for (const GradientOutput& g : grads) {
          if (g.grads.rows() < trigger.size()) {
            throw Error("victim tokenization split the trigger");
          }
          for (std::size_t d = 0; d < mean.size(); ++d) {
            mean[d] += g.grads(slot, d) / static_cast<double>(grads.size());
          }
        }

        const double base = Dot(mean, space.Embed(trigger[slot]));
        const std::string* best = nullptr;
        double best_gain = 0.0;
        for (const std::string& w : vocabulary) {
          if (w == trigger[slot]) continue;
          const double gain = Dot(mean, space.Embed(w)) - base;
          if (gain > best_gain) {
            best_gain = gain;
            best = &w;
          }
        }
        if (best == nullptr) continue;

        std::vector<std::string> proposal = trigger;
        proposal[slot] = *best;
        const double old_loss = MeanLoss(access.GetProb(texts), labels);
        const double new_loss =
            MeanLoss(access.GetProb(batch_texts(proposal, batch)), labels);
        if (new_loss > old_loss) {
          trigger = std::move(proposal);
          changed = true;
          if (trace != nullptr) {
            trace->texts.push_back(Detokenize(trigger));
            trace->values["batch_loss"].push_back(new_loss);
          }
        }
      }
      if (!changed) break;
    }
  } catch (const BudgetExhausted&) {
    // Keep the trigger learned so far.
  }
  return trigger;
}

AttackResult TriggerResult(const Victim& victim, const Sample& sample,
                           std::span<const std::string> trigger,
                           const AttackConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  AttackResult r;
  r.original = sample;
  QueryLedger ledger(std::max<std::size_t>(config.budget, 1));
  VictimAccess verify(victim, ledger, AccessPolicy{false, true, false});
  const std::string text = ApplyTrigger(trigger, sample.text);
  const int predicted = verify.GetPred(text);
  r.success = text != sample.text && predicted != sample.label;
  if (r.success) {
    r.adversarial_text = text;
  } else {
    r.failure_reason = text == sample.text ? "unchanged" : "not-flipped";
  }
  r.queries = ledger;
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return r;
}

UatOutcome AttackUat(const Victim& victim, std::span<const Sample> samples,
                     const AttackConfig& config,
                     const AttackResources& resources) {
  if (config.budget < 1) throw ConfigError("budget must be at least 1");
  if (!victim.supports_gradient()) {
    throw IncompatibleAttacker("attacker 'uat' needs gradients but victim '" +
                               victim.name() + "' does not provide them");
  }
  UatOutcome outcome;
  outcome.learning_queries = QueryLedger(config.budget);
  AttackTrace trace;
  {
    VictimAccess access(victim, outcome.learning_queries,
                        PolicyFor(Accessibility::kGradient));
    outcome.trigger = LearnTrigger(access, samples, config, resources,
                                   config.trace ? &trace : nullptr);
  }
  for (const Sample& sample : samples) {
    outcome.results.push_back(
        TriggerResult(victim, sample, outcome.trigger, config));
    if (config.trace) outcome.results.back().trace = trace;
  }
  return outcome;
}

namespace internal {
namespace {

class Uat final : public Attacker {
 public:
  const AttackerInfo& info() const override {
    static const AttackerInfo kInfo{"uat",
                                    {Accessibility::kGradient},
                                    {Perturbation::kWord, Perturbation::kChar}};
    return kInfo;
  }

  void CheckResources(const AttackResources& res) const override {
    (void)res;
  }

  // Single-instance form: the trigger is learned on this sample alone.
  std::optional<std::string> Search(AttackContext& ctx) const override {
    const std::vector<std::string> trigger =
        LearnTrigger(ctx.access(), std::span<const Sample>(&ctx.sample(), 1),
                     ctx.config(), ctx.resources());
    return ApplyTrigger(trigger, ctx.sample().text);
  }
};

}  // namespace

std::unique_ptr<Attacker> MakeUat() { return std::make_unique<Uat>(); }

}  // namespace internal
}  // namespace advforge
