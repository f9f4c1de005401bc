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

#include "advforge/evaluation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "advforge/error.h"
#include "json.hpp"
#include "tsv.h"

namespace advforge {

namespace {

using Json = nlohmann::json;

constexpr std::string_view kPinnedTimestamp = "1970-01-01T00:00:00Z";

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// stops the remaining work and is rethrown on the calling thread.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto loop = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(loop);
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double Seconds(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double>(ns).count();
}

bool Contains(std::span<const std::string> ids, std::string_view id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

void ValidateMetricIds(std::span<const std::string> ids) {
  const auto known = QualityMetricIds();
  for (const std::string& id : ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw ConfigError("unknown quality metric '" + id + "'");
    }
  }
}

// Compact JSON with sorted keys, two-space indentation and fixed six-digit
// floats. nlohmann's own float output is shortest-roundtrip, which differs
// across platforms in the last digit.
void Dump(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(it.key()).dump(-1, ' ', false,
                                   Json::error_handler_t::replace);
        out += ": ";
        Dump(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        Dump(j[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6f", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

Json OptionalNumber(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json LedgerJson(const QueryLedger& q) {
  return Json{{"prob", q.prob_queries()},
              {"pred", q.pred_queries()},
              {"grad", q.grad_queries()}};
}

Json InstanceJson(const InstanceRecord& rec) {
  const AttackResult& r = rec.result;
  Json metrics = Json::object();
  for (const auto& [id, v] : rec.metrics) metrics[id] = v;
  Json j{{"index", rec.index},
         {"original", r.original.text},
         {"label", r.original.label},
         {"adversarial",
          r.adversarial_text ? Json(*r.adversarial_text) : Json(nullptr)},
         {"success", r.success},
         {"skipped", rec.skipped},
         {"failure_reason", r.failure_reason},
         {"queries", r.queries.total()},
         {"query_breakdown", LedgerJson(r.queries)},
         {"time_s", Seconds(r.elapsed)},
         {"metrics", metrics}};
  if (r.queries.budget()) j["budget"] = *r.queries.budget();
  return j;
}

// Field access that reports the offending key instead of nlohmann's
// generic type_error text.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const std::string& reason) const {
    throw ParseError(source_, 1, reason);
  }

  const Json& Field(const Json& obj, const char* key) const {
    if (!obj.is_object() || !obj.contains(key)) {
      Fail(std::string("missing field '") + key + "'");
    }
    return obj.at(key);
  }

  template <typename T>
  T Get(const Json& obj, const char* key) const {
    const Json& v = Field(obj, key);
    try {
      return v.get<T>();
    } catch (const Json::exception&) {
      Fail(std::string("field '") + key + "' has the wrong type");
    }
  }

  std::optional<double> OptDouble(const Json& obj, const char* key) const {
    const Json& v = Field(obj, key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) Fail(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }

 private:
  std::string source_;
};

QueryLedger RebuildLedger(const Reader& rd, const Json& inst) {
  const Json& q = rd.Field(inst, "query_breakdown");
  std::optional<std::size_t> budget;
  if (inst.contains("budget")) budget = rd.Get<std::size_t>(inst, "budget");
  QueryLedger ledger(budget);
  try {
    ledger.Charge(AccessKind::kProb, rd.Get<std::size_t>(q, "prob"));
    ledger.Charge(AccessKind::kPred, rd.Get<std::size_t>(q, "pred"));
    ledger.Charge(AccessKind::kGrad, rd.Get<std::size_t>(q, "grad"));
  } catch (const BudgetExhausted&) {
    rd.Fail("query breakdown exceeds the recorded budget");
  }
  if (ledger.total() != rd.Get<std::size_t>(inst, "queries")) {
    rd.Fail("query breakdown does not add up to the query total");
  }
  return ledger;
}

std::string FormatValue(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::uint64_t InstanceSeed(std::uint64_t base_seed, std::size_t index) {
  // splitmix64 over a mix of the base seed and the index.
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL *
                                    (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::string> UnavailableMetrics(std::span<const std::string> ids,
                                            const MetricContext& ctx) {
  std::vector<std::string> out;
  for (const std::string& id : ids) {
    bool available = true;
    if (id == metric_id::kSemanticSimilarity) {
      available = ctx.embeddings || ctx.provider;
    } else if (id == metric_id::kFluency) {
      available = ctx.lm || ctx.provider;
    } else if (id == metric_id::kGrammaticality) {
      available = ctx.provider != nullptr;
    }
    if (!available) out.push_back(id);
  }
  return out;
}

std::map<std::string, double> ComputeMetrics(
    const std::string& original, const std::string& adversarial,
    std::span<const std::string> ids, const MetricContext& ctx) {
  std::map<std::string, double> out;
  const std::vector<std::string> orig_words = SplitWords(original);
  const std::vector<std::string> adv_words = SplitWords(adversarial);
  for (const std::string& id : ids) {
    try {
      if (id == metric_id::kModificationRate) {
        out[id] = WordModificationRate(orig_words, adv_words);
      } else if (id == metric_id::kLevenshtein) {
        out[id] = static_cast<double>(Levenshtein(original, adversarial));
      } else if (id == metric_id::kJaccardChar) {
        out[id] = JaccardChar(original, adversarial);
      } else if (id == metric_id::kJaccardWord) {
        out[id] = JaccardWord(original, adversarial);
      } else if (id == metric_id::kBleu) {
        out[id] = Bleu(adv_words, orig_words);
      } else if (id == metric_id::kSemanticSimilarity) {
        if (ctx.embeddings) {
          out[id] = SemanticSimilarity(original, adversarial, *ctx.embeddings,
                                       ctx.pipeline.get());
        } else if (ctx.provider) {
          out[id] = ctx.provider->Similarity(original, adversarial);
        }
      } else if (id == metric_id::kFluency) {
        if (ctx.lm) {
          out[id] = FluencyPerplexity(adversarial, *ctx.lm);
        } else if (ctx.provider) {
          out[id] = ctx.provider->Perplexity(adversarial);
        }
      } else if (id == metric_id::kGrammaticality) {
        if (ctx.provider) {
          out[id] = static_cast<double>(
              Grammaticality(adversarial, ctx.provider.get()));
        }
      } else {
        throw ConfigError("unknown quality metric '" + id + "'");
      }
    } catch (const ProviderUnavailable&) {
      // Left out for this instance only.
    } catch (const MetricError&) {
      // Degenerate pair (e.g. empty text); nothing to report.
    }
  }
  return out;
}

EvalSummary Summarize(std::span<const InstanceRecord> instances,
                      std::span<const std::string> metric_ids,
                      std::span<const std::string> skipped_metrics) {
  EvalSummary s;
  s.counts.total = instances.size();
  double queries = 0.0;
  double time = 0.0;
  for (const InstanceRecord& rec : instances) {
    if (rec.skipped) {
      ++s.counts.skipped_misclassified;
      continue;
    }
    ++s.counts.attacked;
    if (rec.result.success) ++s.counts.succeeded;
    queries += static_cast<double>(rec.result.queries.total());
    time += Seconds(rec.result.elapsed);
  }
  if (s.counts.attacked > 0) {
    const double n = static_cast<double>(s.counts.attacked);
    s.asr = static_cast<double>(s.counts.succeeded) / n;
    s.avg_queries = queries / n;
    s.avg_time_s = time / n;
  }
  s.skipped_metrics.assign(skipped_metrics.begin(), skipped_metrics.end());
  for (const std::string& id : metric_ids) {
    if (Contains(skipped_metrics, id)) continue;
    double sum = 0.0;
    std::size_t n = 0;
    for (const InstanceRecord& rec : instances) {
      if (rec.skipped || !rec.result.success) continue;
      const auto it = rec.metrics.find(id);
      if (it == rec.metrics.end()) continue;
      sum += it->second;
      ++n;
    }
    s.metrics[id] =
        n > 0 ? std::optional<double>(sum / static_cast<double>(n))
              : std::nullopt;
  }
  return s;
}

Evaluation Evaluate(const Attacker& attacker, const Victim& victim,
                    std::span<const Sample> dataset, const RunConfig& run,
                    const AttackResources& resources,
                    const MetricContext& metrics) {
  if (run.workers == 0) throw ConfigError("workers must be at least 1");
  if (run.attack.budget < 1) throw ConfigError("budget must be at least 1");
  ValidateMetricIds(run.metrics);
  CheckCompatible(attacker, victim, run.attack, resources);

  const std::vector<std::string> skipped_metrics =
      UnavailableMetrics(run.metrics, metrics);
  std::vector<std::string> active;
  for (const std::string& id : run.metrics) {
    if (!Contains(skipped_metrics, id)) active.push_back(id);
  }

  Evaluation eval;
  eval.meta.attacker = attacker.info().id;
  eval.meta.victim = victim.name();
  eval.meta.dataset = run.dataset_name;
  eval.meta.seed = run.base_seed;
  eval.meta.budget = run.attack.budget;
  eval.meta.workers = run.workers;
  eval.meta.timestamp =
      run.reproducible ? std::string(kPinnedTimestamp) : UtcNow();

  std::vector<InstanceRecord>& records = eval.instances;
  records.resize(dataset.size());
  const auto start = std::chrono::steady_clock::now();

  // Unmetered pre-filter: misclassified inputs are not attacked.
  ParallelFor(dataset.size(), run.workers, [&](std::size_t i) {
    InstanceRecord& rec = records[i];
    rec.index = i;
    rec.result.original = dataset[i];
    const std::string& text = dataset[i].text;
    rec.skipped =
        victim.Predict(std::span<const std::string>(&text, 1))[0] !=
        dataset[i].label;
    if (rec.skipped) rec.result.failure_reason = "misclassified";
  });

  auto finish = [&](InstanceRecord& rec) {
    if (rec.result.success && !active.empty()) {
      rec.metrics = ComputeMetrics(rec.result.original.text,
                                   *rec.result.adversarial_text, active,
                                   metrics);
    }
    if (run.reproducible) rec.result.elapsed = std::chrono::nanoseconds(0);
  };

  if (attacker.info().id == "uat") {
    std::vector<Sample> attacked;
    for (const InstanceRecord& rec : records) {
      if (!rec.skipped) attacked.push_back(rec.result.original);
    }
    QueryLedger learning(run.attack.budget);
    AttackConfig cfg = run.attack;
    cfg.seed = run.base_seed;
    std::vector<std::string> trigger;
    {
      VictimAccess access(victim, learning, PolicyFor(Accessibility::kGradient));
      trigger = LearnTrigger(access, attacked, cfg, resources);
    }
    eval.meta.trigger = trigger;
    eval.meta.trigger_queries = learning.total();
    ParallelFor(records.size(), run.workers, [&](std::size_t i) {
      InstanceRecord& rec = records[i];
      if (rec.skipped) return;
      rec.result = TriggerResult(victim, dataset[i], trigger, cfg);
      finish(rec);
    });
  } else {
    ParallelFor(records.size(), run.workers, [&](std::size_t i) {
      InstanceRecord& rec = records[i];
      if (rec.skipped) return;
      AttackConfig cfg = run.attack;
      cfg.seed = InstanceSeed(run.base_seed, i);
      rec.result = RunAttack(attacker, victim, dataset[i], cfg, resources);
      finish(rec);
    });
  }

  eval.summary = Summarize(records, run.metrics, skipped_metrics);
  eval.summary.workers = run.workers;
  eval.summary.wall_time_s =
      run.reproducible
          ? 0.0
          : std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
  return eval;
}

std::string Visualize(const AttackResult& result, bool color) {
  const std::string orig_line = "original:    ";
  const std::string adv_line = "adversarial: ";
  if (!result.success || !result.adversarial_text) {
    return orig_line + result.original.text + "\n" + adv_line +
           "ATTACK FAILED\n";
  }
  const std::vector<std::string> a = SplitWords(result.original.text);
  const std::vector<std::string> b = SplitWords(*result.adversarial_text);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1,
                                          std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  std::vector<bool> changed_a(n, true);
  std::vector<bool> changed_b(m, true);
  for (std::size_t i = n, j = m; i > 0 || j > 0;) {
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1] && d[i][j] == d[i - 1][j - 1]) {
      changed_a[i - 1] = changed_b[j - 1] = false;
      --i;
      --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      --i;
    } else {
      --j;
    }
  }
  auto render = [color](const std::vector<std::string>& words,
                        const std::vector<bool>& changed, const char* ansi) {
    std::string out;
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (k > 0) out += ' ';
      if (!changed[k]) {
        out += words[k];
      } else if (color) {
        out += std::string(ansi) + words[k] + "\x1b[0m";
      } else {
        out += "[[" + words[k] + "]]";
      }
    }
    return out;
  };
  return orig_line + render(a, changed_a, "\x1b[31m") + "\n" + adv_line +
         render(b, changed_b, "\x1b[32m") + "\n";
}

std::string SummaryTable(const Evaluation& evaluation) {
  const EvalSummary& s = evaluation.summary;
  std::ostringstream out;
  auto row = [&out](std::string_view id, const std::string& value) {
    const auto o = MetricOrientation(id);
    out << std::left << std::setw(22) << id << std::setw(14) << value
        << (o ? OrientationArrow(*o) : "") << "\n";
  };
  out << std::left << std::setw(22) << "metric" << std::setw(14) << "value"
      << "better\n";
  row(metric_id::kAttackSuccessRate, s.asr ? FormatValue(*s.asr) : "n/a");
  for (std::string_view id : QualityMetricIds()) {
    const std::string key(id);
    if (Contains(s.skipped_metrics, key)) {
      row(id, "skipped");
    } else if (const auto it = s.metrics.find(key); it != s.metrics.end()) {
      row(id, it->second ? FormatValue(*it->second) : "n/a");
    }
  }
  row(metric_id::kQueries,
      s.avg_queries ? FormatValue(*s.avg_queries) : "n/a");
  row(metric_id::kTime, s.avg_time_s ? FormatValue(*s.avg_time_s) : "n/a");
  out << "attacked " << s.counts.attacked << " of " << s.counts.total
      << " (skipped " << s.counts.skipped_misclassified
      << " misclassified), succeeded " << s.counts.succeeded << ", workers "
      << s.workers << "\n";
  return out.str();
}

std::string ReportJson(const Evaluation& evaluation) {
  const EvalMeta& m = evaluation.meta;
  const EvalSummary& s = evaluation.summary;

  Json meta{{"attacker", m.attacker}, {"victim", m.victim},
            {"dataset", m.dataset},   {"seed", m.seed},
            {"budget", m.budget},     {"workers", m.workers},
            {"timestamp", m.timestamp}};
  // Conventions a reader needs to compare numbers across tools.
  meta["notes"] = {
      {"bleu_reference", "original"},
      {"queries", "every text sent to the victim counts once, gradient and "
                  "verification calls included"},
      {"timing", "attack loop wall time; model and resource loading "
                 "excluded"}};
  if (m.trigger) meta["trigger"] = *m.trigger;
  if (m.trigger_queries) meta["trigger_queries"] = *m.trigger_queries;

  Json metrics = Json::object();
  Json orientation = Json::object();
  for (const auto& [id, v] : s.metrics) metrics[id] = OptionalNumber(v);
  for (const std::string& id : s.skipped_metrics) metrics[id] = "skipped";
  for (const auto& [id, unused] : metrics.items()) {
    (void)unused;
    orientation[id] = *MetricOrientation(id) == Orientation::kHigherBetter
                          ? "higher"
                          : "lower";
  }
  Json summary{{"asr", OptionalNumber(s.asr)},
               {"avg_queries", OptionalNumber(s.avg_queries)},
               {"avg_time_s", OptionalNumber(s.avg_time_s)},
               {"metrics", metrics},
               {"orientation", orientation},
               {"counts",
                {{"total", s.counts.total},
                 {"attacked", s.counts.attacked},
                 {"succeeded", s.counts.succeeded},
                 {"skipped_misclassified", s.counts.skipped_misclassified}}},
               {"workers", s.workers},
               {"wall_time_s", s.wall_time_s}};

  Json instances = Json::array();
  for (const InstanceRecord& rec : evaluation.instances) {
    instances.push_back(InstanceJson(rec));
  }
  std::string out;
  Dump(Json{{"meta", meta}, {"summary", summary}, {"instances", instances}}, 0,
       out);
  out += "\n";
  return out;
}

void WriteReport(const Evaluation& evaluation,
                 const std::filesystem::path& path) {
  internal::WriteFileAtomic(path, ReportJson(evaluation));
}

Evaluation ReadReport(const std::filesystem::path& path) {
  return ParseReport(internal::ReadFile(path), path.string());
}

Evaluation ParseReport(std::string_view json, std::string_view source) {
  const Reader rd{std::string(source)};
  Json root;
  try {
    root = Json::parse(json);
  } catch (const Json::parse_error& e) {
    rd.Fail(e.what());
  }
  Evaluation eval;

  const Json& meta = rd.Field(root, "meta");
  eval.meta.attacker = rd.Get<std::string>(meta, "attacker");
  eval.meta.victim = rd.Get<std::string>(meta, "victim");
  eval.meta.dataset = rd.Get<std::string>(meta, "dataset");
  eval.meta.seed = rd.Get<std::uint64_t>(meta, "seed");
  eval.meta.budget = rd.Get<std::size_t>(meta, "budget");
  eval.meta.workers = rd.Get<std::size_t>(meta, "workers");
  eval.meta.timestamp = rd.Get<std::string>(meta, "timestamp");
  if (meta.contains("trigger")) {
    eval.meta.trigger = rd.Get<std::vector<std::string>>(meta, "trigger");
  }
  if (meta.contains("trigger_queries")) {
    eval.meta.trigger_queries = rd.Get<std::size_t>(meta, "trigger_queries");
  }

  const Json& summary = rd.Field(root, "summary");
  EvalSummary& s = eval.summary;
  s.asr = rd.OptDouble(summary, "asr");
  s.avg_queries = rd.OptDouble(summary, "avg_queries");
  s.avg_time_s = rd.OptDouble(summary, "avg_time_s");
  s.workers = rd.Get<std::size_t>(summary, "workers");
  s.wall_time_s = rd.Get<double>(summary, "wall_time_s");
  const Json& counts = rd.Field(summary, "counts");
  s.counts.total = rd.Get<std::size_t>(counts, "total");
  s.counts.attacked = rd.Get<std::size_t>(counts, "attacked");
  s.counts.succeeded = rd.Get<std::size_t>(counts, "succeeded");
  s.counts.skipped_misclassified =
      rd.Get<std::size_t>(counts, "skipped_misclassified");

  const Json& orientation = rd.Field(summary, "orientation");
  const Json& metrics = rd.Field(summary, "metrics");
  if (!metrics.is_object()) rd.Fail("summary metrics must be an object");
  for (const auto& [id, v] : metrics.items()) {
    const auto canonical = MetricOrientation(id);
    if (!canonical) rd.Fail("unknown metric '" + id + "'");
    const std::string declared = rd.Get<std::string>(orientation, id.c_str());
    MetricValue mv;
    mv.id = id;
    mv.orientation = declared == "higher" ? Orientation::kHigherBetter
                                          : Orientation::kLowerBetter;
    if (declared != "higher" && declared != "lower") {
      rd.Fail("bad orientation for '" + id + "'");
    }
    try {
      CheckOrientation(mv);
    } catch (const MetricError& e) {
      rd.Fail(e.what());
    }
    if (v.is_string()) {
      if (v.get<std::string>() != "skipped") rd.Fail("bad value for '" + id + "'");
      s.skipped_metrics.push_back(id);
    } else {
      s.metrics[id] = rd.OptDouble(metrics, id.c_str());
    }
  }

  const Json& instances = rd.Field(root, "instances");
  if (!instances.is_array()) rd.Fail("instances must be an array");
  for (const Json& inst : instances) {
    InstanceRecord rec;
    rec.index = rd.Get<std::size_t>(inst, "index");
    rec.skipped = rd.Get<bool>(inst, "skipped");
    AttackResult& r = rec.result;
    r.original.text = rd.Get<std::string>(inst, "original");
    r.original.label = rd.Get<int>(inst, "label");
    const Json& adv = rd.Field(inst, "adversarial");
    if (!adv.is_null()) r.adversarial_text = rd.Get<std::string>(inst, "adversarial");
    r.success = rd.Get<bool>(inst, "success");
    r.failure_reason = rd.Get<std::string>(inst, "failure_reason");
    r.queries = RebuildLedger(rd, inst);
    r.elapsed = std::chrono::nanoseconds(
        std::llround(rd.Get<double>(inst, "time_s") * 1e9));
    const Json& im = rd.Field(inst, "metrics");
    if (!im.is_object()) rd.Fail("instance metrics must be an object");
    for (const auto& [id, v] : im.items()) {
      if (!v.is_number()) rd.Fail("metric '" + id + "' must be a number");
      rec.metrics[id] = v.get<double>();
    }
    eval.instances.push_back(std::move(rec));
  }
  return eval;
}

SpeedupReport MeasureSpeedup(const Attacker& attacker, const Victim& victim,
                             std::span<const Sample> dataset,
                             std::span<const std::size_t> workers_list,
                             const RunConfig& run,
                             const AttackResources& resources,
                             const MetricContext& metrics) {
  SpeedupReport report;
  auto timed = [&](std::size_t workers) {
    RunConfig cfg = run;
    cfg.workers = workers;
    cfg.reproducible = false;
    return Evaluate(attacker, victim, dataset, cfg, resources, metrics);
  };
  const Evaluation baseline = timed(1);
  const double base_wall = baseline.summary.wall_time_s;
  for (std::size_t w : workers_list) {
    const Evaluation e = w == 1 ? baseline : timed(w);
    SpeedupRow row;
    row.workers = w;
    row.wall_time_s = e.summary.wall_time_s;
    row.speedup = row.wall_time_s > 0.0 ? base_wall / row.wall_time_s : 1.0;
    report.rows.push_back(row);
    for (std::size_t i = 0; i < e.instances.size(); ++i) {
      const InstanceRecord& a = e.instances[i];
      const InstanceRecord& b = baseline.instances[i];
      if (a.skipped != b.skipped || !SameOutcome(a.result, b.result) ||
          a.metrics != b.metrics) {
        report.identical = false;
      }
    }
  }
  return report;
}

}  // namespace advforge
