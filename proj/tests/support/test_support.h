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

#ifndef ADVFORGE_TESTS_SUPPORT_TEST_SUPPORT_H_
#define ADVFORGE_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "advforge/advforge.h"

namespace httplib {
class Server;
}

namespace advforge::testing {

std::filesystem::path DataDir();
std::filesystem::path ProtocolDir();

// The bundled pack, loaded once per process.
const AttackResources& BundledResources();
std::shared_ptr<const LanguagePipeline> BundledPipeline();
std::vector<Sample> BundledDataset(const std::string& file);
const BuiltinVictim& ToyVictim();
const BuiltinVictim& WeakVictim();
// Mean-embedding MLP trained on the bundled training split (seed 1).
const BuiltinVictim& ToyMlpVictim();

// Central finite differences of the cross-entropy loss with respect to every
// entry of the token embedding matrix.
Matrix NumericGradient(const BuiltinVictim& victim, const Matrix& embeddings,
                       int label, double eps);
// ||analytic - numeric|| / max(||analytic||, ||numeric||), Frobenius norms;
// 0 when both are below 1e-12.
double GradientRelativeError(const Matrix& analytic, const Matrix& numeric);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// httplib server on an ephemeral loopback port, served from a background
// thread. Register handlers through server() before calling Start().
class StubServer {
 public:
  StubServer();
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  httplib::Server& server() { return *server_; }
  void Start();
  void Stop();
  std::string url() const;
  int port() const { return port_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

// Two-class linear bag-of-words victim: class-1 logit = sum of word weights,
// class-0 logit = 0.
std::unique_ptr<LinearBowVictim> MakeLinearVictim(
    const std::map<std::string, double>& class1_weights, double bias1 = 0.0);

// Embedding table from explicit rows.
std::shared_ptr<const EmbeddingTable> MakeTable(
    const std::map<std::string, std::vector<double>>& rows);

// Tiny pipeline: given words tagged with `pos`, stopwords as listed.
std::shared_ptr<const LanguagePipeline> MakePipeline(
    const std::map<std::string, Pos>& lexicon,
    const std::vector<std::string>& stopwords = {});

// Counts every text that reaches the wrapped victim.
class CountingVictim final : public Victim {
 public:
  explicit CountingVictim(const Victim& inner) : inner_(inner) {}

  std::string name() const override { return inner_.name(); }
  int num_labels() const override { return inner_.num_labels(); }
  bool supports_gradient() const override {
    return inner_.supports_gradient();
  }
  std::optional<std::size_t> embed_dim() const override {
    return inner_.embed_dim();
  }
  std::vector<VictimOutput> Probabilities(
      std::span<const std::string> texts) const override {
    calls_ += texts.size();
    return inner_.Probabilities(texts);
  }
  std::vector<int> Predict(std::span<const std::string> texts) const override {
    calls_ += texts.size();
    return inner_.Predict(texts);
  }
  std::vector<GradientOutput> Gradients(
      std::span<const std::string> texts,
      std::span<const int> labels) const override {
    calls_ += texts.size();
    return inner_.Gradients(texts, labels);
  }
  std::optional<Vector> Embedding(std::string_view word) const override {
    return inner_.Embedding(word);
  }
  std::vector<std::string> Vocabulary() const override {
    return inner_.Vocabulary();
  }

  std::size_t calls() const { return calls_; }
  void reset() { calls_ = 0; }

 private:
  const Victim& inner_;
  mutable std::atomic<std::size_t> calls_{0};
};

// Sleeps `latency` per call before delegating; used for speedup runs.
class SlowVictim final : public Victim {
 public:
  SlowVictim(const Victim& inner, std::chrono::milliseconds latency)
      : inner_(inner), latency_(latency) {}

  std::string name() const override { return "slow-" + inner_.name(); }
  int num_labels() const override { return inner_.num_labels(); }
  std::vector<VictimOutput> Probabilities(
      std::span<const std::string> texts) const override {
    std::this_thread::sleep_for(latency_);
    return inner_.Probabilities(texts);
  }
  std::vector<int> Predict(std::span<const std::string> texts) const override {
    std::this_thread::sleep_for(latency_);
    return inner_.Predict(texts);
  }

 private:
  const Victim& inner_;
  std::chrono::milliseconds latency_;
};

}  // namespace advforge::testing

#endif  // ADVFORGE_TESTS_SUPPORT_TEST_SUPPORT_H_
