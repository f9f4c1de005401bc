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

#ifndef ADVFORGE_VICTIM_H_
#define ADVFORGE_VICTIM_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "advforge/embedding.h"
#include "advforge/matrix.h"
#include "advforge/text.h"

namespace advforge {

struct VictimOutput {
  Vector probabilities;
  int predicted = 0;

  friend bool operator==(const VictimOutput&, const VictimOutput&) = default;
};

// d loss(label) / d embedding for every input token, one row per token.
struct GradientOutput {
  std::vector<std::string> tokens;
  Matrix grads;
};

// The model under attack. Implementations are immutable and callable from
// several threads at once. Calls made here are unmetered; attackers only
// ever see a VictimAccess.
class Victim {
 public:
  virtual ~Victim() = default;

  virtual std::string name() const = 0;
  virtual int num_labels() const = 0;
  virtual bool supports_gradient() const { return false; }
  virtual std::optional<std::size_t> embed_dim() const { return std::nullopt; }

  virtual std::vector<VictimOutput> Probabilities(
      std::span<const std::string> texts) const = 0;
  // Defaults to the argmax of Probabilities.
  virtual std::vector<int> Predict(std::span<const std::string> texts) const;
  // Throws GradientUnsupported unless overridden.
  virtual std::vector<GradientOutput> Gradients(
      std::span<const std::string> texts, std::span<const int> labels) const;

  // The input embedding the victim uses for `word`, when it exposes one.
  // Gradient attackers measure token moves in this space.
  virtual std::optional<Vector> Embedding(std::string_view word) const {
    (void)word;
    return std::nullopt;
  }
  // Words the victim has embeddings for, sorted.
  virtual std::vector<std::string> Vocabulary() const { return {}; }
};

VictimOutput MakeVictimOutput(Vector probabilities);

enum class AccessKind { kProb, kPred, kGrad };

// Per-attack query accounting. Every text handed to the victim costs one
// query regardless of access kind. When a budget is set, Charge refuses any
// request that would push the total past it; `reserved` queries are held
// back for the final verification call.
class QueryLedger {
 public:
  QueryLedger() = default;
  explicit QueryLedger(std::optional<std::size_t> budget) : budget_(budget) {}

  std::size_t prob_queries() const { return prob_; }
  std::size_t pred_queries() const { return pred_; }
  std::size_t grad_queries() const { return grad_; }
  std::size_t total() const { return prob_ + pred_ + grad_; }
  std::optional<std::size_t> budget() const { return budget_; }

  // Queries still available to the search (the reserve excluded).
  std::size_t remaining() const;
  void set_reserved(std::size_t n) { reserved_ = n; }
  std::size_t reserved() const { return reserved_; }

  // Throws BudgetExhausted without recording anything when `n` does not fit.
  void Charge(AccessKind kind, std::size_t n);

  friend bool operator==(const QueryLedger& a, const QueryLedger& b) {
    return a.prob_ == b.prob_ && a.pred_ == b.pred_ && a.grad_ == b.grad_ &&
           a.budget_ == b.budget_;
  }

 private:
  std::size_t prob_ = 0;
  std::size_t pred_ = 0;
  std::size_t grad_ = 0;
  std::size_t reserved_ = 0;
  std::optional<std::size_t> budget_;
};

// Which access channels a caller may use.
struct AccessPolicy {
  bool prob = true;
  bool pred = true;
  bool grad = true;

  static AccessPolicy None() { return {false, false, false}; }
};

// Metered view of a victim. Charges the ledger before forwarding, so a
// refused request never reaches the model.
class VictimAccess {
 public:
  VictimAccess(const Victim& victim, QueryLedger& ledger,
               AccessPolicy policy = {})
      : victim_(victim), ledger_(ledger), policy_(policy) {}

  std::vector<VictimOutput> GetProb(std::span<const std::string> texts);
  VictimOutput GetProb(const std::string& text);
  std::vector<int> GetPred(std::span<const std::string> texts);
  int GetPred(const std::string& text);
  std::vector<GradientOutput> GetGrad(std::span<const std::string> texts,
                                      std::span<const int> labels);
  GradientOutput GetGrad(const std::string& text, int label);

  std::size_t remaining() const { return ledger_.remaining(); }
  const Victim& victim() const { return victim_; }
  const QueryLedger& ledger() const { return ledger_; }
  const AccessPolicy& policy() const { return policy_; }

 private:
  const Victim& victim_;
  QueryLedger& ledger_;
  AccessPolicy policy_;
};

enum class VictimKind { kLogisticRegression, kMeanEmbeddingMlp };

std::string_view VictimKindName(VictimKind kind);
std::optional<VictimKind> ParseVictimKind(std::string_view name);

// Lower-cased word segmentation shared by the built-in models.
std::vector<std::string> VictimTokens(std::string_view text);

// In-process differentiable classifier. Token embeddings are one-hot rows
// over the vocabulary for the linear model and learned-table rows for the
// MLP; out-of-vocabulary tokens embed to zero.
class BuiltinVictim : public Victim {
 public:
  virtual VictimKind kind() const = 0;

  std::string name() const override;
  bool supports_gradient() const override { return true; }
  std::vector<VictimOutput> Probabilities(
      std::span<const std::string> texts) const override;
  std::vector<GradientOutput> Gradients(
      std::span<const std::string> texts,
      std::span<const int> labels) const override;
  std::optional<Vector> Embedding(std::string_view word) const override;
  std::vector<std::string> Vocabulary() const override { return vocabulary_; }

  // Dense path used by gradient checks: one embedding row per token.
  virtual Matrix EmbedTokens(std::span<const std::string> tokens) const = 0;
  virtual Vector Forward(const Matrix& token_embeddings) const = 0;
  virtual Matrix LossGradient(const Matrix& token_embeddings,
                              int label) const = 0;

  // Cross-entropy of `label` under Forward.
  double Loss(const Matrix& token_embeddings, int label) const;

  std::optional<std::size_t> VocabIndex(std::string_view word) const;

  // Versioned single-file format: a magic line followed by a JSON body.
  void Save(const std::filesystem::path& path) const;
  std::string Serialize() const;
  static std::unique_ptr<BuiltinVictim> Load(const std::filesystem::path& path);
  static std::unique_ptr<BuiltinVictim> Deserialize(std::string_view bytes,
                                                    std::string_view source);

 protected:
  explicit BuiltinVictim(std::vector<std::string> vocabulary);

  virtual Vector ProbabilitiesForTokens(
      std::span<const std::string> tokens) const;

  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Softmax regression over bag-of-words counts.
class LinearBowVictim final : public BuiltinVictim {
 public:
  // weights: num_labels x vocabulary.size(); bias: num_labels.
  LinearBowVictim(std::vector<std::string> vocabulary, Matrix weights,
                  Vector bias);

  VictimKind kind() const override {
    return VictimKind::kLogisticRegression;
  }
  int num_labels() const override { return static_cast<int>(bias_.size()); }
  std::optional<std::size_t> embed_dim() const override {
    return vocabulary_.size();
  }

  Matrix EmbedTokens(std::span<const std::string> tokens) const override;
  Vector Forward(const Matrix& token_embeddings) const override;
  Matrix LossGradient(const Matrix& token_embeddings,
                      int label) const override;

  const Matrix& weights() const { return weights_; }
  const Vector& bias() const { return bias_; }

 protected:
  Vector ProbabilitiesForTokens(
      std::span<const std::string> tokens) const override;

 private:
  Matrix weights_;
  Vector bias_;
};

// Mean of token embeddings -> tanh hidden layer -> softmax.
class MlpVictim final : public BuiltinVictim {
 public:
  // embeddings: vocabulary.size() x d; w1: hidden x d; w2: num_labels x hidden.
  MlpVictim(std::vector<std::string> vocabulary, Matrix embeddings, Matrix w1,
            Vector b1, Matrix w2, Vector b2);

  VictimKind kind() const override { return VictimKind::kMeanEmbeddingMlp; }
  int num_labels() const override { return static_cast<int>(b2_.size()); }
  std::optional<std::size_t> embed_dim() const override {
    return embeddings_.cols();
  }

  Matrix EmbedTokens(std::span<const std::string> tokens) const override;
  Vector Forward(const Matrix& token_embeddings) const override;
  Matrix LossGradient(const Matrix& token_embeddings,
                      int label) const override;

  const Matrix& embeddings() const { return embeddings_; }
  const Matrix& w1() const { return w1_; }
  const Vector& b1() const { return b1_; }
  const Matrix& w2() const { return w2_; }
  const Vector& b2() const { return b2_; }

 private:
  Vector Hidden(std::span<const double> mean) const;

  Matrix embeddings_;
  Matrix w1_;
  Vector b1_;
  Matrix w2_;
  Vector b2_;
};

struct TrainOptions {
  VictimKind kind = VictimKind::kLogisticRegression;
  std::uint64_t seed = 1;
  int max_epochs = 500;
  // Defaults to 0.5 (plain gradient descent) for the linear model and 0.05
  // (Adam) for the MLP.
  std::optional<double> learning_rate;
  double l2 = 1e-4;
  // Stop once the epoch-over-epoch loss change drops below this.
  double tolerance = 1e-6;
  std::size_t hidden = 16;
  // Required for the MLP: frozen input embeddings.
  const EmbeddingTable* embeddings = nullptr;
};

// Full-batch training; deterministic given the options.
// Throws DegenerateDataset when fewer than two classes are present.
std::unique_ptr<BuiltinVictim> TrainBuiltin(std::span<const Sample> dataset,
                                            const TrainOptions& options);

// Client for the HTTP+JSON victim protocol. /info is fetched once at
// construction. Safe to call from several threads.
class RemoteVictim final : public Victim {
 public:
  // `endpoint` like "http://127.0.0.1:8080" with an optional path prefix.
  explicit RemoteVictim(std::string endpoint,
                        std::chrono::milliseconds timeout =
                            std::chrono::milliseconds(30000));

  std::string name() const override { return name_; }
  int num_labels() const override { return num_labels_; }
  bool supports_gradient() const override { return supports_gradient_; }
  std::optional<std::size_t> embed_dim() const override { return embed_dim_; }

  std::vector<VictimOutput> Probabilities(
      std::span<const std::string> texts) const override;
  std::vector<int> Predict(std::span<const std::string> texts) const override;
  std::vector<GradientOutput> Gradients(
      std::span<const std::string> texts,
      std::span<const int> labels) const override;

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string Post(const std::string& path, const std::string& body,
                   int* status_out) const;

  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::string name_;
  int num_labels_ = 0;
  bool supports_gradient_ = false;
  std::optional<std::size_t> embed_dim_;
};

// Parses "builtin:<path>" or "remote:<url>".
std::unique_ptr<Victim> OpenVictim(std::string_view spec);

}  // namespace advforge

#endif  // ADVFORGE_VICTIM_H_
