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

#include "advforge/attack.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "attackers/common.h"
#include "json.hpp"

namespace advforge {

std::string_view AccessibilityName(Accessibility a) {
  switch (a) {
    case Accessibility::kGradient:
      return "gradient";
    case Accessibility::kScore:
      return "score";
    case Accessibility::kDecision:
      return "decision";
    case Accessibility::kBlind:
      return "blind";
  }
  return "?";
}

std::string_view PerturbationName(Perturbation p) {
  switch (p) {
    case Perturbation::kSentence:
      return "sentence";
    case Perturbation::kWord:
      return "word";
    case Perturbation::kChar:
      return "char";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Config

namespace {

template <typename T>
void Take(const nlohmann::json& j, const char* key, T& out) {
  try {
    out = j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key +
                      "' has the wrong type");
  }
}

void TakeCount(const nlohmann::json& j, const char* key, std::size_t& out) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ConfigError(std::string("config key '") + key +
                      "' must be a non-negative integer");
  }
  out = j.get<std::size_t>();
}

}  // namespace

AttackConfig ParseAttackConfig(std::string_view text, AttackConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("attack config is not valid JSON: ") +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError("attack config must be a JSON object");

  using Setter = std::function<void(const nlohmann::json&, AttackConfig&)>;
  auto count = [](std::size_t AttackConfig::*field, const char* key) {
    return Setter([field, key](const nlohmann::json& v, AttackConfig& c) {
      TakeCount(v, key, c.*field);
    });
  };
  auto real = [](double AttackConfig::*field, const char* key) {
    return Setter([field, key](const nlohmann::json& v, AttackConfig& c) {
      if (!v.is_number()) {
        throw ConfigError(std::string("config key '") + key +
                          "' must be a number");
      }
      c.*field = v.get<double>();
    });
  };
  const std::map<std::string, Setter> setters = {
      {"budget", count(&AttackConfig::budget, "budget")},
      {"seed",
       [](const nlohmann::json& v, AttackConfig& c) {
         if (!v.is_number_unsigned() && !v.is_number_integer()) {
           throw ConfigError("config key 'seed' must be an integer");
         }
         c.seed = v.get<std::uint64_t>();
       }},
      {"trace",
       [](const nlohmann::json& v, AttackConfig& c) {
         Take(v, "trace", c.trace);
       }},
      {"unk",
       [](const nlohmann::json& v, AttackConfig& c) { Take(v, "unk", c.unk); }},
      {"neighbors", count(&AttackConfig::neighbors, "neighbors")},
      {"min_cos", real(&AttackConfig::min_cos, "min_cos")},
      {"population", count(&AttackConfig::population, "population")},
      {"generations", count(&AttackConfig::generations, "generations")},
      {"genetic_neighbors",
       count(&AttackConfig::genetic_neighbors, "genetic_neighbors")},
      {"lm_threshold", real(&AttackConfig::lm_threshold, "lm_threshold")},
      {"particles", count(&AttackConfig::particles, "particles")},
      {"pso_iterations", count(&AttackConfig::pso_iterations, "pso_iterations")},
      {"omega_max", real(&AttackConfig::omega_max, "omega_max")},
      {"omega_min", real(&AttackConfig::omega_min, "omega_min")},
      {"mutation", real(&AttackConfig::mutation, "mutation")},
      {"fd_epsilon", real(&AttackConfig::fd_epsilon, "fd_epsilon")},
      {"trigger_length", count(&AttackConfig::trigger_length, "trigger_length")},
      {"uat_batch", count(&AttackConfig::uat_batch, "uat_batch")},
      {"trigger_init",
       [](const nlohmann::json& v, AttackConfig& c) {
         Take(v, "trigger_init", c.trigger_init);
       }},
      {"uat_max_passes", count(&AttackConfig::uat_max_passes, "uat_max_passes")},
      {"textbugger_mode",
       [](const nlohmann::json& v, AttackConfig& c) {
         std::string s;
         Take(v, "textbugger_mode", s);
         if (s == "auto") {
           c.textbugger_mode = TextBuggerMode::kAuto;
         } else if (s == "white-box") {
           c.textbugger_mode = TextBuggerMode::kWhiteBox;
         } else if (s == "black-box") {
           c.textbugger_mode = TextBuggerMode::kBlackBox;
         } else {
           throw ConfigError("textbugger_mode must be auto, white-box or "
                             "black-box");
         }
       }},
      {"wordbug_scorer",
       [](const nlohmann::json& v, AttackConfig& c) {
         std::string s;
         Take(v, "wordbug_scorer", s);
         if (s == "replace1") {
           c.wordbug_scorer = WordBugScorer::kReplaceOne;
         } else if (s == "temporal_head") {
           c.wordbug_scorer = WordBugScorer::kTemporalHead;
         } else if (s == "temporal_tail") {
           c.wordbug_scorer = WordBugScorer::kTemporalTail;
         } else if (s == "combined") {
           c.wordbug_scorer = WordBugScorer::kCombined;
         } else {
           throw ConfigError("wordbug_scorer must be replace1, temporal_head, "
                             "temporal_tail or combined");
         }
       }},
      {"wordbug_top_m", count(&AttackConfig::wordbug_top_m, "wordbug_top_m")},
      {"max_edits", count(&AttackConfig::max_edits, "max_edits")},
      {"viper_p", real(&AttackConfig::viper_p, "viper_p")},
      {"viper_k", count(&AttackConfig::viper_k, "viper_k")},
  };

  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("unknown attack config key '" + key + "'");
    }
    it->second(value, base);
  }
  if (base.budget < 1) throw ConfigError("budget must be at least 1");
  if (base.viper_p < 0.0 || base.viper_p > 1.0) {
    throw ConfigError("viper_p must lie in [0, 1]");
  }
  if (base.mutation < 0.0 || base.mutation > 1.0) {
    throw ConfigError("mutation must lie in [0, 1]");
  }
  return base;
}

// ---------------------------------------------------------------------------
// Results and context

bool SameOutcome(const AttackResult& a, const AttackResult& b) {
  auto same_trace = [](const std::optional<AttackTrace>& x,
                       const std::optional<AttackTrace>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->texts == y->texts && x->values == y->values;
  };
  return a.original.text == b.original.text &&
         a.original.label == b.original.label &&
         a.adversarial_text == b.adversarial_text && a.success == b.success &&
         a.queries == b.queries && a.failure_reason == b.failure_reason &&
         same_trace(a.trace, b.trace);
}

std::vector<VictimOutput> AttackContext::ProbAll(
    std::span<const std::string> texts) {
  if (texts.empty()) return {};
  return access_.GetProb(texts);
}

VictimOutput AttackContext::Prob(const std::string& text) {
  return access_.GetProb(text);
}

std::vector<VictimOutput> AttackContext::ProbSome(
    std::span<const std::string> texts) {
  if (texts.empty()) return {};
  const std::size_t n = std::min(texts.size(), access_.remaining());
  if (n == 0) throw BudgetExhausted();
  return access_.GetProb(texts.first(n));
}

void AttackContext::TraceText(const std::string& text) {
  if (trace_ != nullptr) trace_->texts.push_back(text);
}

void AttackContext::TraceValue(const std::string& key, double value) {
  if (trace_ != nullptr) trace_->values[key].push_back(value);
}

// ---------------------------------------------------------------------------
// Registry

Accessibility Attacker::Mode(const Victim& victim,
                             const AttackConfig& config) const {
  (void)victim;
  (void)config;
  return info().accessibility.front();
}

AccessPolicy PolicyFor(Accessibility mode) {
  switch (mode) {
    case Accessibility::kGradient:
      return {true, true, true};
    case Accessibility::kScore:
      return {true, true, false};
    case Accessibility::kDecision:
      return {false, true, false};
    case Accessibility::kBlind:
      return AccessPolicy::None();
  }
  return AccessPolicy::None();
}

namespace {

using Factory = std::unique_ptr<Attacker> (*)();

const std::vector<std::pair<std::string_view, Factory>>& Factories() {
  static const std::vector<std::pair<std::string_view, Factory>> kFactories = {
      {"textfooler", &internal::MakeTextFooler},
      {"pwws", &internal::MakePwws},
      {"genetic", &internal::MakeGenetic},
      {"sememe-pso", &internal::MakeSememePso},
      {"hotflip", &internal::MakeHotFlip},
      {"fd", &internal::MakeFd},
      {"uat", &internal::MakeUat},
      {"textbugger", &internal::MakeTextBugger},
      {"deepwordbug", &internal::MakeDeepWordBug},
      {"viper", &internal::MakeViper},
      {"sea-rules", &internal::MakeSeaRules},
  };
  return kFactories;
}

}  // namespace

std::vector<std::string> AttackerIds() {
  std::vector<std::string> ids;
  for (const auto& [id, factory] : Factories()) ids.emplace_back(id);
  return ids;
}

std::unique_ptr<Attacker> MakeAttacker(std::string_view id) {
  for (const auto& [name, factory] : Factories()) {
    if (name == id) return factory();
  }
  std::string valid;
  for (const auto& [name, factory] : Factories()) {
    if (!valid.empty()) valid += ", ";
    valid += name;
  }
  throw UnknownAttacker("unknown attacker '" + std::string(id) +
                        "'; valid ids: " + valid);
}

void CheckCompatible(const Attacker& attacker, const Victim& victim,
                     const AttackConfig& config,
                     const AttackResources& resources) {
  if (attacker.Mode(victim, config) == Accessibility::kGradient &&
      !victim.supports_gradient()) {
    throw IncompatibleAttacker("attacker '" + attacker.info().id +
                               "' needs gradients but victim '" +
                               victim.name() + "' does not provide them");
  }
  attacker.CheckResources(resources);
}

// ---------------------------------------------------------------------------
// Driver

AttackResult RunAttack(const Attacker& attacker, const Victim& victim,
                       const Sample& sample, const AttackConfig& config,
                       const AttackResources& resources) {
  if (config.budget < 1) throw ConfigError("budget must be at least 1");
  CheckCompatible(attacker, victim, config, resources);

  AttackResult result;
  result.original = sample;
  QueryLedger ledger(config.budget);
  ledger.set_reserved(1);
  const Accessibility mode = attacker.Mode(victim, config);
  std::mt19937_64 rng(config.seed);
  AttackTrace trace;
  AttackTrace* trace_ptr = config.trace ? &trace : nullptr;

  const auto start = std::chrono::steady_clock::now();
  std::optional<std::string> proposal;
  std::string reason;
  {
    VictimAccess access(victim, ledger, PolicyFor(mode));
    AttackContext ctx(access, sample, config, resources, rng, trace_ptr);
    try {
      bool misclassified = false;
      if (mode == Accessibility::kDecision) {
        misclassified = access.GetPred(sample.text) != sample.label;
      } else if (mode != Accessibility::kBlind) {
        VictimOutput out = access.GetProb(sample.text);
        misclassified = out.predicted != sample.label;
        ctx.set_original_output(std::move(out));
      }
      if (misclassified) {
        reason = "misclassified";
      } else {
        proposal = attacker.Search(ctx);
        if (!proposal) reason = "exhausted";
      }
    } catch (const BudgetExhausted&) {
      proposal.reset();
      reason = "budget";
    }
  }

  ledger.set_reserved(0);
  if (proposal) {
    const bool changed = *proposal != sample.text;
    if (changed || mode == Accessibility::kBlind) {
      VictimAccess verify(victim, ledger, AccessPolicy{false, true, false});
      const int predicted = verify.GetPred(*proposal);
      result.success = changed && predicted != sample.label;
      if (!result.success) reason = changed ? "not-flipped" : "unchanged";
    } else {
      reason = "unchanged";
    }
    if (result.success) result.adversarial_text = *proposal;
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  result.queries = ledger;
  result.failure_reason = result.success ? "" : reason;
  if (trace_ptr != nullptr) result.trace = std::move(trace);
  return result;
}

}  // namespace advforge
