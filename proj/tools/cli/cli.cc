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

#include "cli/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "advforge/advforge.h"
#include "json.hpp"

namespace advforge::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalFlags {
  std::string data_dir;
  std::string manifest;
  std::string cache_dir;
};

struct CampaignFlags {
  std::string attacker;
  std::string victim;
  std::string dataset;
  std::size_t budget = 500;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::string report;
  bool visualize = false;
  bool color = false;
  std::string metrics = "all";
  std::string config;
  bool json = false;
  bool reproducible = false;
  std::size_t limit = 0;
  std::string metric_provider;
  std::string workers_list = "1,2,4";
  CLI::Option* budget_opt = nullptr;
};

struct TrainFlags {
  std::string kind = "lr";
  std::string dataset;
  std::string output;
  std::string eval_dataset;
  std::uint64_t seed = 1;
  int epochs = 500;
  std::size_t hidden = 16;
  bool json = false;
};

struct Env {
  ResourceRegistry registry;
  fs::path cache_dir;
};

Env LoadEnv(const GlobalFlags& g) {
  Env env;
  env.registry = ResourceRegistry::Bundled(
      g.data_dir.empty() ? DefaultDataDir() : fs::path(g.data_dir));
  if (!g.manifest.empty()) env.registry.Merge(g.manifest);
  env.cache_dir = g.cache_dir.empty() ? DefaultCacheDir() : fs::path(g.cache_dir);
  return env;
}

// A file path, or a registry id of the expected kind.
fs::path ResolvePath(const Env& env, const std::string& ref, ResourceKind kind,
                     const char* what) {
  std::error_code ec;
  if (fs::exists(ref, ec)) return ref;
  if (env.registry.Contains(ref)) {
    const ResourceDescriptor& d = env.registry.Get(ref);
    if (d.kind != kind) {
      throw ConfigError("resource '" + ref + "' is a " +
                        std::string(ResourceKindName(d.kind)) + ", not a " +
                        what);
    }
    return Fetch(d, env.cache_dir).path;
  }
  throw ConfigError(std::string(what) + " '" + ref +
                    "' is neither a file nor a registered resource id");
}

std::unique_ptr<Victim> ResolveVictim(const Env& env, const std::string& spec) {
  if (spec.starts_with("remote:")) return OpenVictim(spec);
  const std::string ref = spec.starts_with("builtin:") ? spec.substr(8) : spec;
  return BuiltinVictim::Load(ResolvePath(env, ref, ResourceKind::kVictim, "victim"));
}

std::vector<std::string> ParseMetrics(const std::string& flag) {
  std::vector<std::string> ids;
  if (flag == "none") return ids;
  if (flag == "all") {
    for (std::string_view id : QualityMetricIds()) ids.emplace_back(id);
    return ids;
  }
  std::stringstream ss(flag);
  std::string id;
  while (std::getline(ss, id, ',')) {
    const auto known = QualityMetricIds();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      std::string valid;
      for (std::string_view k : known) valid += " " + std::string(k);
      throw ConfigError("unknown metric '" + id + "'; valid: all none" + valid);
    }
    ids.push_back(id);
  }
  return ids;
}

AttackConfig BuildAttackConfig(const CampaignFlags& f) {
  AttackConfig cfg;
  if (!f.config.empty()) {
    std::string text = f.config;
    if (!text.starts_with("{")) {
      std::ifstream in(text);
      if (!in) throw ConfigError("cannot read config file " + text);
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    cfg = ParseAttackConfig(text, cfg);
  }
  // An explicit --budget beats the config file.
  if (f.budget_opt->count() > 0 || f.config.empty()) cfg.budget = f.budget;
  if (cfg.budget < 1) throw ConfigError("--budget must be at least 1");
  return cfg;
}

std::string AccessList(const AttackerInfo& info) {
  std::string s;
  for (Accessibility a : info.accessibility) {
    s += (s.empty() ? "" : ",") + std::string(AccessibilityName(a));
  }
  return s;
}

std::string PerturbationList(const AttackerInfo& info) {
  std::string s;
  for (Perturbation p : info.perturbation) {
    s += (s.empty() ? "" : ",") + std::string(PerturbationName(p));
  }
  return s;
}

struct Campaign {
  std::unique_ptr<Attacker> attacker;
  std::unique_ptr<Victim> victim;
  std::vector<Sample> dataset;
  AttackResources resources;
  MetricContext metrics;
  RunConfig run;
};

Campaign PrepareCampaign(const GlobalFlags& g, const CampaignFlags& f) {
  Campaign c;
  c.attacker = MakeAttacker(f.attacker);
  if (f.workers < 1) throw ConfigError("--workers must be at least 1");
  c.run.attack = BuildAttackConfig(f);
  c.run.metrics = ParseMetrics(f.metrics);
  const Env env = LoadEnv(g);
  c.resources = LoadAttackResources(env.registry, env.cache_dir);
  c.victim = ResolveVictim(env, f.victim);
  const fs::path data =
      ResolvePath(env, f.dataset, ResourceKind::kDataset, "dataset");
  c.dataset = LoadDataset(data, *c.resources.pipeline);
  if (f.limit > 0 && c.dataset.size() > f.limit) c.dataset.resize(f.limit);
  if (c.dataset.empty()) throw ConfigError("dataset " + f.dataset + " is empty");

  c.metrics.embeddings = c.resources.embeddings;
  c.metrics.pipeline = c.resources.pipeline;
  c.metrics.lm = c.resources.lm;
  if (!f.metric_provider.empty()) {
    c.metrics.provider =
        std::make_shared<const RemoteMetricProvider>(f.metric_provider);
  }
  c.run.workers = f.workers;
  c.run.base_seed = f.seed;
  c.run.reproducible = f.reproducible;
  c.run.dataset_name = fs::path(f.dataset).filename().string();
  // Fails fast, before any instance is touched.
  CheckCompatible(*c.attacker, *c.victim, c.run.attack, c.resources);
  return c;
}

int CmdCampaign(const GlobalFlags& g, const CampaignFlags& f, bool per_instance,
                std::ostream& out) {
  Campaign c = PrepareCampaign(g, f);
  const Evaluation ev = Evaluate(*c.attacker, *c.victim, c.dataset, c.run,
                                 c.resources, c.metrics);
  if (!f.report.empty()) WriteReport(ev, f.report);
  if (f.json) {
    out << ReportJson(ev);
    return kExitOk;
  }
  if (per_instance) {
    for (const InstanceRecord& rec : ev.instances) {
      out << "#" << rec.index << " ";
      if (rec.skipped) {
        out << "skipped (misclassified)\n";
        continue;
      }
      const AttackResult& r = rec.result;
      out << (r.success ? "success" : "failed (" + r.failure_reason + ")")
          << ", queries " << r.queries.total() << "\n";
      if (f.visualize) out << Visualize(r, f.color);
    }
    out << "\n";
  }
  if (ev.meta.trigger) {
    out << "trigger: " << Detokenize(*ev.meta.trigger) << " ("
        << *ev.meta.trigger_queries << " learning queries)\n";
  }
  out << SummaryTable(ev);
  return kExitOk;
}

int CmdSpeedup(const GlobalFlags& g, const CampaignFlags& f, std::ostream& out) {
  std::vector<std::size_t> workers;
  std::stringstream ss(f.workers_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t w = 0;
    try {
      w = std::stoul(item);
    } catch (const std::exception&) {
      throw ConfigError("bad --workers-list entry '" + item + "'");
    }
    if (w == 0) throw ConfigError("worker counts must be at least 1");
    workers.push_back(w);
  }
  if (workers.empty()) throw ConfigError("--workers-list is empty");
  Campaign c = PrepareCampaign(g, f);
  const SpeedupReport rep = MeasureSpeedup(*c.attacker, *c.victim, c.dataset,
                                           workers, c.run, c.resources,
                                           c.metrics);
  if (f.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SpeedupRow& r : rep.rows) {
      rows.push_back({{"workers", r.workers},
                      {"wall_time_s", r.wall_time_s},
                      {"speedup", r.speedup}});
    }
    out << nlohmann::json{{"rows", rows}, {"identical", rep.identical}}.dump(2)
        << "\n";
    return kExitOk;
  }
  out << std::left << std::setw(10) << "workers" << std::setw(14)
      << "wall_time_s" << "speedup\n";
  for (const SpeedupRow& r : rep.rows) {
    char wall[32];
    char sp[32];
    std::snprintf(wall, sizeof(wall), "%.4f", r.wall_time_s);
    std::snprintf(sp, sizeof(sp), "%.3f", r.speedup);
    out << std::setw(10) << r.workers << std::setw(14) << wall << sp << "\n";
  }
  out << "identical results across worker counts: "
      << (rep.identical ? "yes" : "NO") << "\n";
  return kExitOk;
}

double Accuracy(const Victim& victim, const std::vector<Sample>& data) {
  std::vector<std::string> texts;
  for (const Sample& s : data) texts.push_back(s.text);
  const std::vector<int> pred = victim.Predict(texts);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < data.size(); ++i) ok += pred[i] == data[i].label;
  return data.empty() ? 0.0
                      : static_cast<double>(ok) / static_cast<double>(data.size());
}

int CmdTrain(const GlobalFlags& g, const TrainFlags& f, std::ostream& out) {
  const auto kind = ParseVictimKind(f.kind);
  if (!kind) throw ConfigError("unknown victim kind '" + f.kind + "' (lr, mlp)");
  const Env env = LoadEnv(g);
  const ResourceDescriptor& pd = env.registry.Get("en.pipeline");
  const auto pipeline = std::get<std::shared_ptr<const LanguagePipeline>>(
      LoadResource(pd.kind, Fetch(pd, env.cache_dir).path));
  const auto train = LoadDataset(
      ResolvePath(env, f.dataset, ResourceKind::kDataset, "dataset"), *pipeline);

  TrainOptions opts;
  opts.kind = *kind;
  opts.seed = f.seed;
  opts.max_epochs = f.epochs;
  opts.hidden = f.hidden;
  std::shared_ptr<const EmbeddingTable> table;
  if (*kind == VictimKind::kMeanEmbeddingMlp) {
    const ResourceDescriptor& ed = env.registry.Get("en.embeddings");
    table = std::get<std::shared_ptr<const EmbeddingTable>>(
        LoadResource(ed.kind, Fetch(ed, env.cache_dir).path));
    opts.embeddings = table.get();
  }
  const auto victim = TrainBuiltin(train, opts);
  victim->Save(f.output);

  nlohmann::json summary{{"output", f.output},
                         {"kind", std::string(VictimKindName(*kind))},
                         {"train_accuracy", Accuracy(*victim, train)}};
  if (!f.eval_dataset.empty()) {
    const auto held = LoadDataset(
        ResolvePath(env, f.eval_dataset, ResourceKind::kDataset, "dataset"),
        *pipeline);
    summary["heldout_accuracy"] = Accuracy(*victim, held);
  }
  if (f.json) {
    out << summary.dump(2) << "\n";
  } else {
    out << "wrote " << f.output << "\n";
    out << "train accuracy: " << summary["train_accuracy"].get<double>() << "\n";
    if (summary.contains("heldout_accuracy")) {
      out << "held-out accuracy: " << summary["heldout_accuracy"].get<double>()
          << "\n";
    }
  }
  return kExitOk;
}

int CmdList(const GlobalFlags& g, bool resources, std::ostream& out) {
  if (resources) {
    const Env env = LoadEnv(g);
    for (const ResourceDescriptor& d : env.registry.descriptors()) {
      out << std::left << std::setw(18) << d.id << std::setw(12)
          << ResourceKindName(d.kind) << d.sha256.substr(0, 12) << "  "
          << (d.url ? *d.url : d.path.string()) << "\n";
    }
    return kExitOk;
  }
  out << std::left << std::setw(14) << "attacker" << std::setw(18)
      << "accessibility" << "perturbation\n";
  for (const std::string& id : AttackerIds()) {
    const auto a = MakeAttacker(id);
    out << std::setw(14) << id << std::setw(18) << AccessList(a->info())
        << PerturbationList(a->info()) << "\n";
  }
  return kExitOk;
}

int CmdFetch(const GlobalFlags& g, std::vector<std::string> ids, bool all,
             std::ostream& out) {
  const Env env = LoadEnv(g);
  if (all) {
    ids.clear();
    for (const ResourceDescriptor& d : env.registry.descriptors()) {
      ids.push_back(d.id);
    }
  }
  if (ids.empty()) throw ConfigError("fetch needs resource ids or --all");
  // Resolve every id first so a typo fails before any download.
  std::vector<const ResourceDescriptor*> descs;
  for (const std::string& id : ids) descs.push_back(&env.registry.Get(id));
  for (const ResourceDescriptor* d : descs) {
    const FetchResult r = Fetch(*d, env.cache_dir);
    out << d->id << "\t" << r.path.string() << "\t"
        << (r.downloaded ? "downloaded" : "verified");
    if (r.quarantined) out << " (corrupt copy moved to " << *r.quarantined << ")";
    out << "\n";
  }
  return kExitOk;
}

void AddCampaignFlags(CLI::App* cmd, CampaignFlags& f, bool per_instance) {
  cmd->add_option("--attacker", f.attacker, "Attacker id (see `list`)")
      ->required();
  cmd->add_option("--victim", f.victim,
                  "builtin:<path|resource-id> or remote:<url>")
      ->required();
  cmd->add_option("--dataset", f.dataset,
                  "label<TAB>text file or dataset resource id")
      ->required();
  f.budget_opt = cmd->add_option("--budget", f.budget,
                                 "Query budget per instance (default 500)");
  cmd->add_option("--workers", f.workers, "Worker threads (default 1)");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--report", f.report, "Write the JSON report here");
  cmd->add_option("--metrics", f.metrics,
                  "Quality metrics: all, none or a comma-separated list");
  cmd->add_option("--config", f.config,
                  "Attacker hyperparameters: JSON object or JSON file");
  cmd->add_flag("--json", f.json, "Print the report JSON on stdout");
  cmd->add_flag("--reproducible", f.reproducible,
                "Zero timings and pin the timestamp for byte-stable reports");
  cmd->add_option("--limit", f.limit, "Use only the first N instances");
  cmd->add_option("--metric-provider", f.metric_provider,
                  "Remote metric provider URL");
  if (per_instance) {
    cmd->add_flag("--visualize", f.visualize, "Print word-aligned diffs");
    cmd->add_flag("--color", f.color, "Use ANSI colours in --visualize");
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"advforge: textual adversarial attacks and their evaluation",
               "advforge"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--data", g.data_dir, "Bundled data directory");
  app.add_option("--manifest", g.manifest, "Extra resource manifest (JSON)");
  app.add_option("--cache", g.cache_dir,
                 "Resource cache directory (default $ADVFORGE_CACHE)");

  CampaignFlags attack_f;
  CampaignFlags eval_f;
  CampaignFlags speed_f;
  TrainFlags train_f;
  bool list_resources = false;
  std::vector<std::string> fetch_ids;
  bool fetch_all = false;

  CLI::App* attack = app.add_subcommand("attack", "Attack a dataset");
  AddCampaignFlags(attack, attack_f, true);
  CLI::App* eval = app.add_subcommand("eval", "Attack and print the summary");
  AddCampaignFlags(eval, eval_f, false);
  CLI::App* speedup =
      app.add_subcommand("speedup", "Wall-clock speedup across worker counts");
  AddCampaignFlags(speedup, speed_f, false);
  speedup->add_option("--workers-list", speed_f.workers_list,
                      "Comma-separated worker counts (default 1,2,4)");
  CLI::App* train = app.add_subcommand("train-victim", "Train a built-in victim");
  train->add_option("--kind", train_f.kind, "lr or mlp");
  train->add_option("--dataset", train_f.dataset, "Training data")->required();
  train->add_option("--output", train_f.output, "Output .victim file")
      ->required();
  train->add_option("--eval-dataset", train_f.eval_dataset,
                    "Held-out data to report accuracy on");
  train->add_option("--seed", train_f.seed, "Training seed");
  train->add_option("--epochs", train_f.epochs, "Maximum epochs");
  train->add_option("--hidden", train_f.hidden, "MLP hidden units");
  train->add_flag("--json", train_f.json, "Print a JSON summary");
  CLI::App* list = app.add_subcommand("list", "List attackers or resources");
  list->add_flag("--resources", list_resources, "List registered resources");
  CLI::App* fetch = app.add_subcommand("fetch", "Fetch and verify resources");
  fetch->add_option("ids", fetch_ids, "Resource ids");
  fetch->add_flag("--all", fetch_all, "Every registered resource");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (attack->parsed()) return CmdCampaign(g, attack_f, true, out);
    if (eval->parsed()) return CmdCampaign(g, eval_f, false, out);
    if (speedup->parsed()) return CmdSpeedup(g, speed_f, out);
    if (train->parsed()) return CmdTrain(g, train_f, out);
    if (list->parsed()) return CmdList(g, list_resources, out);
    if (fetch->parsed()) return CmdFetch(g, fetch_ids, fetch_all, out);
  } catch (const UnknownAttacker& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IncompatibleAttacker& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnknownResource& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ManifestConflict& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace advforge::cli
