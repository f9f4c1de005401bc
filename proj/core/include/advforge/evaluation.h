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

#ifndef ADVFORGE_EVALUATION_H_
#define ADVFORGE_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advforge/attack.h"
#include "advforge/metrics.h"
#include "advforge/victim.h"

namespace advforge {

// Backends for the quality metrics. Native backends win when both are
// present; a metric with neither is reported as skipped.
struct MetricContext {
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::shared_ptr<const LanguagePipeline> pipeline;
  std::shared_ptr<const NGramLM> lm;
  std::shared_ptr<const RemoteMetricProvider> provider;
};

struct RunConfig {
  std::size_t workers = 1;
  std::uint64_t base_seed = 0;
  // Budget and hyperparameters; the seed is replaced per instance.
  AttackConfig attack;
  // Quality metric ids to compute; empty selects none.
  std::vector<std::string> metrics = {QualityMetricIds().begin(),
                                      QualityMetricIds().end()};
  // Zero every timing and pin the timestamp so reports are byte-stable.
  bool reproducible = false;
  std::string dataset_name;
};

struct InstanceRecord {
  std::size_t index = 0;
  // Misclassified before any attack; `result` then only carries the sample.
  bool skipped = false;
  AttackResult result;
  // Quality metrics of a successful example. Absent ids were skipped.
  std::map<std::string, double> metrics;
};

struct EvalCounts {
  std::size_t total = 0;
  std::size_t attacked = 0;
  std::size_t succeeded = 0;
  std::size_t skipped_misclassified = 0;

  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

struct EvalSummary {
  // succeeded / attacked; absent when nothing was attacked.
  std::optional<double> asr;
  // Averages over successes. nullopt when there was no success.
  std::map<std::string, std::optional<double>> metrics;
  // Selected metrics with no available backend.
  std::vector<std::string> skipped_metrics;
  // Averages over attacked instances.
  std::optional<double> avg_queries;
  std::optional<double> avg_time_s;
  EvalCounts counts;
  std::size_t workers = 1;
  double wall_time_s = 0.0;
};

struct EvalMeta {
  std::string attacker;
  std::string victim;
  std::string dataset;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t workers = 1;
  std::string timestamp;
  // UAT only.
  std::optional<std::vector<std::string>> trigger;
  std::optional<std::size_t> trigger_queries;
};

struct Evaluation {
  EvalMeta meta;
  EvalSummary summary;
  std::vector<InstanceRecord> instances;
};

// Per-instance seed; independent of worker count and scheduling.
std::uint64_t InstanceSeed(std::uint64_t base_seed, std::size_t index);

// Attacks every correctly classified instance on `run.workers` threads and
// aggregates the results in dataset order. Throws IncompatibleAttacker (or
// ConfigError) before touching any instance.
Evaluation Evaluate(const Attacker& attacker, const Victim& victim,
                    std::span<const Sample> dataset, const RunConfig& run,
                    const AttackResources& resources,
                    const MetricContext& metrics);

// Quality metrics for one (original, adversarial) pair; ids without a
// backend are left out.
std::map<std::string, double> ComputeMetrics(
    const std::string& original, const std::string& adversarial,
    std::span<const std::string> ids, const MetricContext& ctx);

// Recomputes the summary from per-instance records.
EvalSummary Summarize(std::span<const InstanceRecord> instances,
                      std::span<const std::string> metric_ids,
                      std::span<const std::string> skipped_metrics);

// Selected ids that have no backend in `ctx`.
std::vector<std::string> UnavailableMetrics(std::span<const std::string> ids,
                                            const MetricContext& ctx);

// Two-line, word-aligned diff of original and adversarial text. Changed
// tokens are wrapped in [[ ]] or coloured with ANSI red/green.
std::string Visualize(const AttackResult& result, bool color);

// Summary table: one row per metric with its orientation arrow.
std::string SummaryTable(const Evaluation& evaluation);

// JSON report with sorted keys and six-decimal floats.
std::string ReportJson(const Evaluation& evaluation);
// Throws IoError.
void WriteReport(const Evaluation& evaluation,
                 const std::filesystem::path& path);
// Parses a report written by WriteReport. Throws IoError / ParseError.
Evaluation ReadReport(const std::filesystem::path& path);
Evaluation ParseReport(std::string_view json, std::string_view source);

struct SpeedupRow {
  std::size_t workers = 1;
  double wall_time_s = 0.0;
  double speedup = 1.0;
};

struct SpeedupReport {
  std::vector<SpeedupRow> rows;
  // Per-instance results agreed across every worker count.
  bool identical = true;
};

// Runs Evaluate once per worker count with identical seeds.
// speedup_w = wall_time(1) / wall_time(w); a single-worker baseline is run
// even when 1 is not listed.
SpeedupReport MeasureSpeedup(const Attacker& attacker, const Victim& victim,
                             std::span<const Sample> dataset,
                             std::span<const std::size_t> workers_list,
                             const RunConfig& run,
                             const AttackResources& resources,
                             const MetricContext& metrics);

}  // namespace advforge

#endif  // ADVFORGE_EVALUATION_H_
