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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any hard criterion fails. The speedup criterion is soft: it
// always runs and reports honestly, but does not fail the binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "advforge/advforge.h"
#include "json.hpp"
#include "support/micro.h"
#include "support/test_support.h"

namespace advforge::testing {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure messages; the first few end up in the detail line.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      if (failures_.size() < 5) failures_.push_back(what);
      ++failed_;
    }
  }
  bool ok() const { return failed_ == 0; }
  Outcome Finish(std::string detail) const {
    Outcome o;
    o.pass = ok();
    std::ostringstream s;
    s << detail << "; " << checks_ << " checks";
    if (failed_ > 0) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    o.detail = s.str();
    return o;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int Pred(const Victim& v, const std::string& text) {
  return v.Predict(std::span<const std::string>(&text, 1))[0];
}

std::vector<Sample> CorrectSamples(const Victim& v, std::size_t n) {
  std::vector<Sample> out;
  for (const Sample& s : BundledDataset("corpus_test.tsv")) {
    if (out.size() == n) break;
    if (Pred(v, s.text) == s.label) out.push_back(s);
  }
  return out;
}

std::string ClassList(const std::vector<Accessibility>& classes) {
  std::string out;
  for (Accessibility a : classes) {
    if (!out.empty()) out += ",";
    out += AccessibilityName(a);
  }
  return out;
}

// Runs every attacker on `samples` at `budget` and checks the ledger, the
// access class and the success invariants.
void CheckContracts(const std::vector<Sample>& samples, std::size_t budget,
                    Checker& check) {
  CountingVictim victim(ToyVictim());
  for (const std::string& id : AttackerIds()) {
    const auto attacker = MakeAttacker(id);
    AttackConfig config;
    config.budget = budget;
    config.seed = 11;
    const Accessibility mode = attacker->Mode(victim, config);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Sample& s = samples[i];
      victim.reset();
      const AttackResult r =
          RunAttack(*attacker, victim, s, config, BundledResources());
      const QueryLedger& q = r.queries;
      const std::string tag = id + "#" + std::to_string(i) + "@" +
                              std::to_string(budget);
      check.Expect(q.total() <= budget, tag + " over budget");
      check.Expect(victim.calls() == q.total(), tag + " unmetered call");
      switch (mode) {
        case Accessibility::kBlind:
          check.Expect(q.total() == 1 && q.pred_queries() == 1,
                       tag + " blind attacker queried");
          break;
        case Accessibility::kDecision:
          check.Expect(q.prob_queries() + q.grad_queries() == 0,
                       tag + " decision attacker read scores");
          break;
        case Accessibility::kScore:
          check.Expect(q.grad_queries() == 0,
                       tag + " score attacker read gradients");
          break;
        case Accessibility::kGradient:
          break;
      }
      if (r.success) {
        check.Expect(r.adversarial_text && *r.adversarial_text != s.text &&
                         Pred(ToyVictim(), *r.adversarial_text) != s.label,
                     tag + " unverified success");
      } else {
        check.Expect(!r.adversarial_text && !r.failure_reason.empty(),
                     tag + " failure without reason");
      }
    }
  }
}

Outcome AccessibilityConformance() {
  Checker check;
  // Expected taxonomy of the registry.
  const std::map<std::string, std::string> expected = {
      {"textfooler", "score"},     {"pwws", "score"},
      {"genetic", "score"},        {"sememe-pso", "score"},
      {"hotflip", "gradient"},     {"fd", "gradient"},
      {"uat", "gradient"},         {"textbugger", "gradient,score"},
      {"deepwordbug", "score"},    {"viper", "blind"},
      {"sea-rules", "decision"}};
  const auto ids = AttackerIds();
  check.Expect(ids.size() == expected.size(), "registry size");
  for (const std::string& id : ids) {
    const auto it = expected.find(id);
    check.Expect(it != expected.end() &&
                     ClassList(MakeAttacker(id)->info().accessibility) ==
                         it->second,
                 id + " taxonomy");
  }
  const auto samples = CorrectSamples(ToyVictim(), 50);
  check.Expect(samples.size() == 50, "50 correctly classified samples");
  CheckContracts(samples, 500, check);
  return check.Finish("11 attackers x " + std::to_string(samples.size()) +
                      " instances");
}

Outcome BudgetEnforcement() {
  Checker check;
  const auto samples = CorrectSamples(ToyVictim(), 50);
  CheckContracts(samples, 10, check);
  // Trigger learning has its own ledger under the same cap.
  for (std::size_t budget : {10u, 500u}) {
    AttackConfig config;
    config.budget = budget;
    const UatOutcome out =
        AttackUat(ToyVictim(), samples, config, BundledResources());
    check.Expect(out.learning_queries.total() <= budget,
                 "uat learning ledger @" + std::to_string(budget));
    for (const AttackResult& r : out.results) {
      check.Expect(r.queries.total() == 1, "uat verification ledger");
    }
  }
  return check.Finish("budgets 500 and 10");
}

Outcome GradientOracle() {
  Checker check;
  const auto corpus = BundledDataset("corpus_test.tsv");
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  std::uniform_int_distribution<int> label(0, 1);
  double worst = 0.0;
  for (const BuiltinVictim* v : {&ToyVictim(), &ToyMlpVictim()}) {
    for (int i = 0; i < 20; ++i) {
      const std::vector<std::string> tokens =
          VictimTokens(corpus[pick(rng)].text);
      const Matrix e = v->EmbedTokens(tokens);
      const int y = label(rng);
      const double err = GradientRelativeError(v->LossGradient(e, y),
                                               NumericGradient(*v, e, y, 1e-4));
      worst = std::max(worst, err);
      check.Expect(err <= 1e-4, v->name() + " relative error " +
                                    std::to_string(err));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst relative error %.2e", worst);
  return check.Finish(buf);
}

Outcome BruteForceEquivalence() {
  Checker check;
  const std::vector<std::string> greedy = {"textfooler", "pwws", "genetic",
                                           "sememe-pso", "hotflip", "fd"};
  std::size_t flippable = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MicroInstance m = RandomMicroInstance(seed);
    const std::string tag = "seed " + std::to_string(seed);
    const bool oracle = BruteForceFlippable(*m.victim, m.words, m.space,
                                            m.sample.label);
    flippable += oracle;

    AttackConfig traced;
    traced.trace = true;
    const AttackResult hf = RunAttack(*MakeAttacker("hotflip"), *m.victim,
                                      m.sample, traced, m.resources);
    const auto best =
        BestSingleSubstitution(*m.victim, m.words, m.space, m.sample.label);
    const double p0 = m.victim->Probabilities(std::span<const std::string>(
        &m.sample.text, 1))[0].probabilities[m.sample.label];
    check.Expect(hf.trace.has_value(), tag + " hotflip trace");
    if (best && best->label_prob < p0) {
      check.Expect(hf.trace && !hf.trace->texts.empty() &&
                       hf.trace->texts.front() == best->text,
                   tag + " hotflip first flip");
    } else {
      check.Expect(hf.trace && hf.trace->texts.empty(),
                   tag + " hotflip flipped without gain");
    }

    for (const std::string& id : greedy) {
      const AttackResult r =
          RunAttack(*MakeAttacker(id), *m.victim, m.sample, {}, m.resources);
      if (r.success) {
        check.Expect(oracle, tag + " " + id + " beat the exhaustive search");
        check.Expect(Pred(*m.victim, *r.adversarial_text) != m.sample.label,
                     tag + " " + id + " unverified success");
      }
    }
  }
  return check.Finish("20 micro instances, " + std::to_string(flippable) +
                      " flippable");
}

Outcome MetricAxioms() {
  Checker check;
  std::mt19937_64 rng(7);
  const std::vector<std::string> alphabet = {"a", "b", "c", "\xc3\xa9", " "};
  std::uniform_int_distribution<std::size_t> len(0, 8);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  auto random_string = [&] {
    std::string s;
    for (std::size_t n = len(rng); n > 0; --n) s += alphabet[ch(rng)];
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    const std::string x = random_string();
    const std::string y = random_string();
    const std::string z = random_string();
    const std::size_t xy = Levenshtein(x, y);
    check.Expect(Levenshtein(x, x) == 0, "identity");
    check.Expect((xy == 0) == (x == y), "indiscernibles");
    check.Expect(xy == Levenshtein(y, x), "symmetry");
    check.Expect(Levenshtein(x, z) <= xy + Levenshtein(y, z), "triangle");
    const double jc = JaccardChar(x, y);
    const double jw = JaccardWord(x, y);
    check.Expect(jc >= 0.0 && jc <= 1.0 && jw >= 0.0 && jw <= 1.0,
                 "jaccard bounds");
    check.Expect(JaccardChar(x, x) == 1.0 && JaccardWord(x, x) == 1.0,
                 "jaccard identity");
  }
  const std::vector<std::string> words = {"the", "movie", "was", "good",
                                          "and", "funny", "with", "a",
                                          "fine", "cast"};
  std::uniform_int_distribution<std::size_t> n_words(1, words.size());
  std::uniform_int_distribution<std::size_t> w(0, words.size() - 1);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> x;
    for (std::size_t n = n_words(rng); n > 0; --n) x.push_back(words[w(rng)]);
    check.Expect(std::abs(Bleu(x, x) - 1.0) < 1e-12, "bleu identity");
  }
  std::vector<std::string> adv = words;
  adv[1] = "film";
  adv[3] = "great";
  check.Expect(std::abs(WordModificationRate(words, adv) - 0.2) < 1e-12,
               "modification rate 2 of 10");
  return check.Finish("1000 random triples");
}

Evaluation RunEval(const std::string& id, std::span<const Sample> data,
                   std::size_t workers, bool reproducible) {
  RunConfig run;
  run.workers = workers;
  run.base_seed = 5;
  run.reproducible = reproducible;
  run.metrics.clear();
  run.dataset_name = "corpus-test";
  return Evaluate(*MakeAttacker(id), ToyVictim(), data, run,
                  BundledResources(), {});
}

Outcome DeterminismAndParallel() {
  Checker check;
  auto data = BundledDataset("corpus_test.tsv");
  data.resize(std::min<std::size_t>(data.size(), 100));
  for (const std::string& id : AttackerIds()) {
    const std::string a = ReportJson(RunEval(id, data, 1, true));
    const std::string b = ReportJson(RunEval(id, data, 1, true));
    check.Expect(a == b, id + " report bytes differ between runs");

    RunConfig run;
    run.base_seed = 5;
    run.metrics.clear();
    const std::size_t workers[] = {1, 2, 4};
    const SpeedupReport rep =
        MeasureSpeedup(*MakeAttacker(id), ToyVictim(), data, workers, run,
                       BundledResources(), {});
    check.Expect(rep.identical, id + " results depend on worker count");
  }
  return check.Finish("11 attackers x " + std::to_string(data.size()) +
                      " instances, workers 1/2/4");
}

Outcome Speedup() {
  Checker check;
  auto data = BundledDataset("corpus_test.tsv");
  data.resize(std::min<std::size_t>(data.size(), 200));
  SlowVictim slow(ToyVictim(), std::chrono::milliseconds(10));
  RunConfig run;
  run.base_seed = 1;
  run.metrics.clear();
  const std::size_t workers[] = {1, 4};
  const SpeedupReport rep = MeasureSpeedup(
      *MakeAttacker("textfooler"), slow, data, workers, run,
      BundledResources(), {});
  double s4 = 0.0;
  for (const SpeedupRow& row : rep.rows) {
    if (row.workers == 4) s4 = row.speedup;
  }
  check.Expect(rep.identical, "results depend on worker count");
  check.Expect(s4 > 1.5, "speedup at 4 workers is " + std::to_string(s4));
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "speedup %.2fx at 4 workers, %u hardware threads", s4,
                std::thread::hardware_concurrency());
  return check.Finish(buf);
}

Outcome AsrFloor() {
  Checker check;
  const auto split = BundledDataset("weak_split.tsv");
  std::ostringstream detail;
  for (const std::string id : {"textfooler", "pwws"}) {
    RunConfig run;
    run.base_seed = 0;
    run.metrics.clear();
    const Evaluation ev = Evaluate(*MakeAttacker(id), WeakVictim(), split, run,
                                   BundledResources(), {});
    const double asr = ev.summary.asr.value_or(0.0);
    check.Expect(asr >= 0.5, id + " asr " + std::to_string(asr));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s asr %.3f, ", id.c_str(), asr);
    detail << buf;
  }

  // The certificate must describe the bundled files, and every witness must
  // really flip the victim.
  const auto en = DataDir() / "en";
  std::ifstream in(en / "certification.json");
  const nlohmann::json cert = nlohmann::json::parse(in);
  check.Expect(cert.at("victim_sha256") == Sha256Path(en / "weak.victim"),
               "certificate victim digest");
  check.Expect(cert.at("dataset_sha256") == Sha256Path(en / "weak_split.tsv"),
               "certificate dataset digest");
  std::size_t correct = 0;
  std::size_t flippable = 0;
  for (const auto& row : cert.at("instances")) {
    if (!row.at("correct").get<bool>()) continue;
    ++correct;
    if (!row.at("flippable").get<bool>()) continue;
    const std::size_t index = row.at("index");
    const std::string witness = row.at("witness");
    const bool flips =
        index < split.size() && Pred(WeakVictim(), witness) != split[index].label;
    check.Expect(flips, "witness " + std::to_string(index) + " does not flip");
    flippable += flips;
  }
  const double ratio = correct == 0 ? 0.0 : static_cast<double>(flippable) /
                                                 static_cast<double>(correct);
  check.Expect(ratio >= 0.7, "certified flippable ratio " +
                                 std::to_string(ratio));
  char buf[96];
  std::snprintf(buf, sizeof(buf), "certified flippable %zu/%zu", flippable,
                correct);
  detail << buf;
  return check.Finish(detail.str());
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double limit_s;
  bool soft;
};

}  // namespace
}  // namespace advforge::testing

int main() {
  using namespace advforge::testing;
  const std::vector<Criterion> criteria = {
      {"accessibility-conformance", AccessibilityConformance, 60.0, false},
      {"budget-enforcement", BudgetEnforcement, 300.0, false},
      {"gradient-oracle", GradientOracle, 10.0, false},
      {"brute-force-equivalence", BruteForceEquivalence, 30.0, false},
      {"metric-axioms", MetricAxioms, 60.0, false},
      {"determinism-and-parallel", DeterminismAndParallel, 300.0, false},
      {"parallel-speedup", Speedup, 300.0, true},
      {"asr-floor", AsrFloor, 120.0, false},
  };
  int hard_failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = Seconds(start);
    if (elapsed > c.limit_s) {
      o.pass = false;
      char buf[96];
      std::snprintf(buf, sizeof(buf), "; exceeded %.0fs limit", c.limit_s);
      o.detail += buf;
    }
    std::printf("%s %-26s %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), elapsed, c.soft ? " [soft]" : "");
    std::fflush(stdout);
    if (!o.pass && !c.soft) ++hard_failures;
  }
  return hard_failures == 0 ? 0 : 1;
}
