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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "advforge/error.h"
#include "advforge/victim.h"

namespace advforge {

namespace {

struct Prepared {
  std::vector<std::vector<std::string>> tokens;
  std::vector<int> labels;
  int num_labels = 0;
};

Prepared Prepare(std::span<const Sample> dataset) {
  Prepared p;
  std::set<int> distinct;
  for (const Sample& s : dataset) {
    if (s.label < 0) throw DegenerateDataset("negative label in dataset");
    distinct.insert(s.label);
    p.tokens.push_back(VictimTokens(s.text));
    p.labels.push_back(s.label);
  }
  if (distinct.size() < 2) {
    throw DegenerateDataset("training needs at least two classes, found " +
                            std::to_string(distinct.size()));
  }
  p.num_labels = *distinct.rbegin() + 1;
  return p;
}

std::unique_ptr<BuiltinVictim> TrainLinear(const Prepared& data,
                                           const TrainOptions& opt) {
  std::set<std::string> vocab_set;
  for (const auto& toks : data.tokens) vocab_set.insert(toks.begin(), toks.end());
  std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index[vocab[i]] = i;

  // Sparse count features.
  std::vector<std::vector<std::pair<std::size_t, double>>> feats;
  for (const auto& toks : data.tokens) {
    std::map<std::size_t, double> counts;
    for (const std::string& t : toks) counts[index.at(t)] += 1.0;
    feats.emplace_back(counts.begin(), counts.end());
  }

  const std::size_t C = static_cast<std::size_t>(data.num_labels);
  const std::size_t V = vocab.size();
  const double n = static_cast<double>(feats.size());
  const double lr = opt.learning_rate.value_or(0.5);
  Matrix w(C, V);
  Vector b(C, 0.0);
  double prev_loss = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < opt.max_epochs; ++epoch) {
    Matrix gw(C, V);
    Vector gb(C, 0.0);
    double loss = 0.0;
    for (std::size_t s = 0; s < feats.size(); ++s) {
      Vector logits = b;
      for (const auto& [j, v] : feats[s]) {
        for (std::size_t k = 0; k < C; ++k) logits[k] += w(k, j) * v;
      }
      Vector p = Softmax(logits);
      loss -= std::log(std::max(p[data.labels[s]], 1e-300));
      p[data.labels[s]] -= 1.0;
      for (std::size_t k = 0; k < C; ++k) {
        gb[k] += p[k];
        for (const auto& [j, v] : feats[s]) gw(k, j) += p[k] * v;
      }
    }
    loss /= n;
    double reg = 0.0;
    for (double v : w.data()) reg += v * v;
    loss += 0.5 * opt.l2 * reg;
    for (std::size_t i = 0; i < w.data().size(); ++i) {
      w.data()[i] -= lr * (gw.data()[i] / n + opt.l2 * w.data()[i]);
    }
    for (std::size_t k = 0; k < C; ++k) b[k] -= lr * gb[k] / n;
    if (std::abs(prev_loss - loss) < opt.tolerance) break;
    prev_loss = loss;
  }
  return std::make_unique<LinearBowVictim>(std::move(vocab), std::move(w),
                                           std::move(b));
}

// Adam over a flat parameter vector.
class Adam {
 public:
  Adam(std::size_t n, double lr) : lr_(lr), m_(n, 0.0), v_(n, 0.0) {}

  void Step(std::span<double> params, std::span<const double> grad) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + 1e-8);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  double lr_;
  int t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

std::unique_ptr<BuiltinVictim> TrainMlp(const Prepared& data,
                                        const TrainOptions& opt) {
  if (opt.embeddings == nullptr) {
    throw ConfigError("mlp training requires an embedding table");
  }
  const EmbeddingTable& table = *opt.embeddings;
  std::set<std::string> vocab_set;
  for (const auto& toks : data.tokens) {
    for (const std::string& t : toks) {
      if (table.Contains(t)) vocab_set.insert(t);
    }
  }
  std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  const std::size_t d = table.dim();
  Matrix emb(vocab.size(), d);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto row = *table.Find(vocab[i]);
    std::copy(row.begin(), row.end(), emb.row(i).begin());
  }

  // Embeddings are frozen, so each sample reduces to its mean vector.
  std::vector<Vector> means;
  for (const auto& toks : data.tokens) {
    Vector m(d, 0.0);
    for (const std::string& t : toks) {
      if (const auto row = table.Find(t); row && vocab_set.contains(t)) {
        for (std::size_t c = 0; c < d; ++c) m[c] += (*row)[c];
      }
    }
    if (!toks.empty()) {
      for (double& v : m) v /= static_cast<double>(toks.size());
    }
    means.push_back(std::move(m));
  }

  const std::size_t H = opt.hidden;
  const std::size_t C = static_cast<std::size_t>(data.num_labels);
  std::mt19937_64 rng(opt.seed);
  const double a1 = std::sqrt(6.0 / static_cast<double>(d + H));
  const double a2 = std::sqrt(6.0 / static_cast<double>(H + C));
  std::uniform_real_distribution<double> u1(-a1, a1);
  std::uniform_real_distribution<double> u2(-a2, a2);

  // Flat layout: W1 (H x d) | b1 (H) | W2 (C x H) | b2 (C).
  const std::size_t o_b1 = H * d;
  const std::size_t o_w2 = o_b1 + H;
  const std::size_t o_b2 = o_w2 + C * H;
  std::vector<double> theta(o_b2 + C, 0.0);
  for (std::size_t i = 0; i < o_b1; ++i) theta[i] = u1(rng);
  for (std::size_t i = o_w2; i < o_b2; ++i) theta[i] = u2(rng);

  Adam adam(theta.size(), opt.learning_rate.value_or(0.05));
  const double n = static_cast<double>(means.size());
  double prev_loss = std::numeric_limits<double>::infinity();
  std::vector<double> grad(theta.size());
  Vector h(H), dh(H), logits(C);
  for (int epoch = 0; epoch < opt.max_epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (std::size_t s = 0; s < means.size(); ++s) {
      const Vector& m = means[s];
      for (std::size_t j = 0; j < H; ++j) {
        double z = theta[o_b1 + j];
        for (std::size_t c = 0; c < d; ++c) z += theta[j * d + c] * m[c];
        h[j] = std::tanh(z);
      }
      for (std::size_t k = 0; k < C; ++k) {
        double z = theta[o_b2 + k];
        for (std::size_t j = 0; j < H; ++j) z += theta[o_w2 + k * H + j] * h[j];
        logits[k] = z;
      }
      Vector p = Softmax(logits);
      loss -= std::log(std::max(p[data.labels[s]], 1e-300));
      p[data.labels[s]] -= 1.0;
      std::fill(dh.begin(), dh.end(), 0.0);
      for (std::size_t k = 0; k < C; ++k) {
        grad[o_b2 + k] += p[k];
        for (std::size_t j = 0; j < H; ++j) {
          grad[o_w2 + k * H + j] += p[k] * h[j];
          dh[j] += theta[o_w2 + k * H + j] * p[k];
        }
      }
      for (std::size_t j = 0; j < H; ++j) {
        const double dz = dh[j] * (1.0 - h[j] * h[j]);
        grad[o_b1 + j] += dz;
        for (std::size_t c = 0; c < d; ++c) grad[j * d + c] += dz * m[c];
      }
    }
    loss /= n;
    double reg = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      grad[i] /= n;
      const bool is_weight = i < o_b1 || (i >= o_w2 && i < o_b2);
      if (is_weight) {
        reg += theta[i] * theta[i];
        grad[i] += opt.l2 * theta[i];
      }
    }
    loss += 0.5 * opt.l2 * reg;
    adam.Step(theta, grad);
    if (std::abs(prev_loss - loss) < opt.tolerance) break;
    prev_loss = loss;
  }

  Matrix w1(H, d, std::vector<double>(theta.begin(), theta.begin() + o_b1));
  Vector b1(theta.begin() + o_b1, theta.begin() + o_w2);
  Matrix w2(C, H, std::vector<double>(theta.begin() + o_w2, theta.begin() + o_b2));
  Vector b2(theta.begin() + o_b2, theta.end());
  return std::make_unique<MlpVictim>(std::move(vocab), std::move(emb),
                                     std::move(w1), std::move(b1),
                                     std::move(w2), std::move(b2));
}

}  // namespace

std::unique_ptr<BuiltinVictim> TrainBuiltin(std::span<const Sample> dataset,
                                            const TrainOptions& options) {
  const Prepared data = Prepare(dataset);
  switch (options.kind) {
    case VictimKind::kLogisticRegression:
      return TrainLinear(data, options);
    case VictimKind::kMeanEmbeddingMlp:
      return TrainMlp(data, options);
  }
  throw ConfigError("unknown victim kind");
}

}  // namespace advforge
