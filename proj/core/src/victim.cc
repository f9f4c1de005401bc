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

#include "advforge/victim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "advforge/error.h"
#include "advforge/utf8.h"

namespace advforge {

std::vector<int> Victim::Predict(std::span<const std::string> texts) const {
  std::vector<int> out;
  out.reserve(texts.size());
  for (const VictimOutput& o : Probabilities(texts)) out.push_back(o.predicted);
  return out;
}

std::vector<GradientOutput> Victim::Gradients(
    std::span<const std::string> texts, std::span<const int> labels) const {
  (void)texts;
  (void)labels;
  throw GradientUnsupported("victim '" + name() +
                            "' does not expose gradients");
}

VictimOutput MakeVictimOutput(Vector probabilities) {
  VictimOutput out;
  out.predicted = ArgMax(probabilities);
  out.probabilities = std::move(probabilities);
  return out;
}

std::size_t QueryLedger::remaining() const {
  if (!budget_) return std::numeric_limits<std::size_t>::max();
  const std::size_t used = total() + reserved_;
  return used >= *budget_ ? 0 : *budget_ - used;
}

void QueryLedger::Charge(AccessKind kind, std::size_t n) {
  if (n > remaining()) throw BudgetExhausted();
  switch (kind) {
    case AccessKind::kProb:
      prob_ += n;
      break;
    case AccessKind::kPred:
      pred_ += n;
      break;
    case AccessKind::kGrad:
      grad_ += n;
      break;
  }
}

std::vector<VictimOutput> VictimAccess::GetProb(
    std::span<const std::string> texts) {
  if (!policy_.prob) {
    throw AccessViolation("probability access not permitted for this attacker");
  }
  if (texts.empty()) return {};
  ledger_.Charge(AccessKind::kProb, texts.size());
  return victim_.Probabilities(texts);
}

VictimOutput VictimAccess::GetProb(const std::string& text) {
  return GetProb(std::span<const std::string>(&text, 1)).front();
}

std::vector<int> VictimAccess::GetPred(std::span<const std::string> texts) {
  if (!policy_.pred) {
    throw AccessViolation("decision access not permitted for this attacker");
  }
  if (texts.empty()) return {};
  ledger_.Charge(AccessKind::kPred, texts.size());
  return victim_.Predict(texts);
}

int VictimAccess::GetPred(const std::string& text) {
  return GetPred(std::span<const std::string>(&text, 1)).front();
}

std::vector<GradientOutput> VictimAccess::GetGrad(
    std::span<const std::string> texts, std::span<const int> labels) {
  if (!policy_.grad) {
    throw AccessViolation("gradient access not permitted for this attacker");
  }
  if (!victim_.supports_gradient()) {
    throw GradientUnsupported("victim '" + victim_.name() +
                              "' does not expose gradients");
  }
  if (texts.empty()) return {};
  ledger_.Charge(AccessKind::kGrad, texts.size());
  return victim_.Gradients(texts, labels);
}

GradientOutput VictimAccess::GetGrad(const std::string& text, int label) {
  return GetGrad(std::span<const std::string>(&text, 1),
                 std::span<const int>(&label, 1))
      .front();
}

std::string_view VictimKindName(VictimKind kind) {
  switch (kind) {
    case VictimKind::kLogisticRegression:
      return "lr";
    case VictimKind::kMeanEmbeddingMlp:
      return "mlp";
  }
  return "lr";
}

std::optional<VictimKind> ParseVictimKind(std::string_view name) {
  if (name == "lr") return VictimKind::kLogisticRegression;
  if (name == "mlp") return VictimKind::kMeanEmbeddingMlp;
  return std::nullopt;
}

std::vector<std::string> VictimTokens(std::string_view text) {
  std::vector<std::string> out = SplitWords(text);
  for (std::string& w : out) w = utf8::AsciiLower(w);
  return out;
}

// ---------------------------------------------------------------------------
// BuiltinVictim

BuiltinVictim::BuiltinVictim(std::vector<std::string> vocabulary)
    : vocabulary_(std::move(vocabulary)) {
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], i).second) {
      throw std::invalid_argument("duplicate vocabulary entry '" +
                                  vocabulary_[i] + "'");
    }
  }
}

std::string BuiltinVictim::name() const {
  return "builtin-" + std::string(VictimKindName(kind()));
}

std::optional<std::size_t> BuiltinVictim::VocabIndex(
    std::string_view word) const {
  const auto it = index_.find(utf8::AsciiLower(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vector BuiltinVictim::ProbabilitiesForTokens(
    std::span<const std::string> tokens) const {
  return Forward(EmbedTokens(tokens));
}

std::vector<VictimOutput> BuiltinVictim::Probabilities(
    std::span<const std::string> texts) const {
  std::vector<VictimOutput> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    out.push_back(MakeVictimOutput(ProbabilitiesForTokens(VictimTokens(text))));
  }
  return out;
}

std::vector<GradientOutput> BuiltinVictim::Gradients(
    std::span<const std::string> texts, std::span<const int> labels) const {
  if (texts.size() != labels.size()) {
    throw std::invalid_argument("gradient request: texts/labels size mismatch");
  }
  std::vector<GradientOutput> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_labels()) {
      throw std::invalid_argument("gradient request: label out of range");
    }
    GradientOutput g;
    g.tokens = VictimTokens(texts[i]);
    g.grads = LossGradient(EmbedTokens(g.tokens), labels[i]);
    out.push_back(std::move(g));
  }
  return out;
}

std::optional<Vector> BuiltinVictim::Embedding(std::string_view word) const {
  const std::string w = utf8::AsciiLower(word);
  const Matrix e = EmbedTokens(std::span<const std::string>(&w, 1));
  return Vector(e.row(0).begin(), e.row(0).end());
}

double BuiltinVictim::Loss(const Matrix& token_embeddings, int label) const {
  const Vector p = Forward(token_embeddings);
  return -std::log(p[label]);
}

// ---------------------------------------------------------------------------
// LinearBowVictim

LinearBowVictim::LinearBowVictim(std::vector<std::string> vocabulary,
                                 Matrix weights, Vector bias)
    : BuiltinVictim(std::move(vocabulary)),
      weights_(std::move(weights)),
      bias_(std::move(bias)) {
  if (weights_.rows() != bias_.size() ||
      weights_.cols() != vocabulary_.size() || bias_.empty()) {
    throw std::invalid_argument("linear victim: inconsistent weight shapes");
  }
}

Matrix LinearBowVictim::EmbedTokens(std::span<const std::string> tokens) const {
  Matrix e(tokens.size(), vocabulary_.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (const auto idx = VocabIndex(tokens[i])) e(i, *idx) = 1.0;
  }
  return e;
}

Vector LinearBowVictim::Forward(const Matrix& token_embeddings) const {
  Vector logits = bias_;
  Vector x(vocabulary_.size(), 0.0);
  for (std::size_t r = 0; r < token_embeddings.rows(); ++r) {
    const auto row = token_embeddings.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) x[c] += row[c];
  }
  for (std::size_t k = 0; k < logits.size(); ++k) {
    logits[k] += Dot(weights_.row(k), x);
  }
  return Softmax(logits);
}

Matrix LinearBowVictim::LossGradient(const Matrix& token_embeddings,
                                     int label) const {
  Vector delta = Forward(token_embeddings);
  delta[label] -= 1.0;
  // d logits / d x_i = W for every token, so all rows share W^T delta.
  Vector g(vocabulary_.size(), 0.0);
  for (std::size_t k = 0; k < delta.size(); ++k) {
    const auto w = weights_.row(k);
    for (std::size_t c = 0; c < g.size(); ++c) g[c] += w[c] * delta[k];
  }
  Matrix out(token_embeddings.rows(), vocabulary_.size());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    std::copy(g.begin(), g.end(), out.row(r).begin());
  }
  return out;
}

Vector LinearBowVictim::ProbabilitiesForTokens(
    std::span<const std::string> tokens) const {
  Vector logits = bias_;
  for (const std::string& t : tokens) {
    if (const auto idx = VocabIndex(t)) {
      for (std::size_t k = 0; k < logits.size(); ++k) {
        logits[k] += weights_(k, *idx);
      }
    }
  }
  return Softmax(logits);
}

// ---------------------------------------------------------------------------
// MlpVictim

MlpVictim::MlpVictim(std::vector<std::string> vocabulary, Matrix embeddings,
                     Matrix w1, Vector b1, Matrix w2, Vector b2)
    : BuiltinVictim(std::move(vocabulary)),
      embeddings_(std::move(embeddings)),
      w1_(std::move(w1)),
      b1_(std::move(b1)),
      w2_(std::move(w2)),
      b2_(std::move(b2)) {
  if (embeddings_.rows() != vocabulary_.size() ||
      w1_.cols() != embeddings_.cols() || w1_.rows() != b1_.size() ||
      w2_.cols() != w1_.rows() || w2_.rows() != b2_.size() || b2_.empty()) {
    throw std::invalid_argument("mlp victim: inconsistent weight shapes");
  }
}

Matrix MlpVictim::EmbedTokens(std::span<const std::string> tokens) const {
  Matrix e(tokens.size(), embeddings_.cols());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (const auto idx = VocabIndex(tokens[i])) {
      const auto src = embeddings_.row(*idx);
      std::copy(src.begin(), src.end(), e.row(i).begin());
    }
  }
  return e;
}

namespace {

Vector MeanRows(const Matrix& m) {
  Vector mean(m.cols(), 0.0);
  if (m.rows() == 0) return mean;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) mean[c] += row[c];
  }
  for (double& v : mean) v /= static_cast<double>(m.rows());
  return mean;
}

}  // namespace

Vector MlpVictim::Hidden(std::span<const double> mean) const {
  Vector h = b1_;
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j] = std::tanh(h[j] + Dot(w1_.row(j), mean));
  }
  return h;
}

Vector MlpVictim::Forward(const Matrix& token_embeddings) const {
  const Vector h = Hidden(MeanRows(token_embeddings));
  Vector logits = b2_;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    logits[k] += Dot(w2_.row(k), h);
  }
  return Softmax(logits);
}

Matrix MlpVictim::LossGradient(const Matrix& token_embeddings,
                               int label) const {
  const Vector mean = MeanRows(token_embeddings);
  const Vector h = Hidden(mean);
  Vector logits = b2_;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    logits[k] += Dot(w2_.row(k), h);
  }
  Vector delta = Softmax(logits);
  delta[label] -= 1.0;

  Vector dh(h.size(), 0.0);
  for (std::size_t k = 0; k < delta.size(); ++k) {
    const auto w = w2_.row(k);
    for (std::size_t j = 0; j < dh.size(); ++j) dh[j] += w[j] * delta[k];
  }
  for (std::size_t j = 0; j < dh.size(); ++j) dh[j] *= 1.0 - h[j] * h[j];

  Vector dmean(embeddings_.cols(), 0.0);
  for (std::size_t j = 0; j < dh.size(); ++j) {
    const auto w = w1_.row(j);
    for (std::size_t c = 0; c < dmean.size(); ++c) dmean[c] += w[c] * dh[j];
  }
  Matrix out(token_embeddings.rows(), embeddings_.cols());
  if (out.rows() == 0) return out;
  const double scale = 1.0 / static_cast<double>(out.rows());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = dmean[c] * scale;
  }
  return out;
}

}  // namespace advforge
