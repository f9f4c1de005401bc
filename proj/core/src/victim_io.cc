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

// Built-in victim file format:
//
//   ADVFORGE-VICTIM\n
//   {"version": 1, "kind": "lr"|"mlp", "num_labels": C,
//    "vocabulary": [...], ...row-major weight arrays...}

#include <string>

#include "advforge/error.h"
#include "advforge/victim.h"
#include "json.hpp"
#include "tsv.h"

namespace advforge {

namespace {

constexpr std::string_view kMagic = "ADVFORGE-VICTIM\n";
constexpr int kFormatVersion = 1;

using nlohmann::json;

json MatrixJson(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix MatrixFrom(const json& j, std::string_view key) {
  const json& m = j.at(std::string(key));
  const auto rows = m.at("rows").get<std::size_t>();
  const auto cols = m.at("cols").get<std::size_t>();
  auto data = m.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) {
    throw std::invalid_argument(std::string(key) + ": data length mismatch");
  }
  return Matrix(rows, cols, std::move(data));
}

}  // namespace

std::string BuiltinVictim::Serialize() const {
  json body;
  body["version"] = kFormatVersion;
  body["kind"] = std::string(VictimKindName(kind()));
  body["num_labels"] = num_labels();
  body["vocabulary"] = vocabulary_;
  if (const auto* lr = dynamic_cast<const LinearBowVictim*>(this)) {
    body["weights"] = MatrixJson(lr->weights());
    body["bias"] = lr->bias();
  } else if (const auto* mlp = dynamic_cast<const MlpVictim*>(this)) {
    body["embeddings"] = MatrixJson(mlp->embeddings());
    body["w1"] = MatrixJson(mlp->w1());
    body["b1"] = mlp->b1();
    body["w2"] = MatrixJson(mlp->w2());
    body["b2"] = mlp->b2();
  }
  return std::string(kMagic) + body.dump() + "\n";
}

void BuiltinVictim::Save(const std::filesystem::path& path) const {
  internal::WriteFileAtomic(path, Serialize());
}

std::unique_ptr<BuiltinVictim> BuiltinVictim::Load(
    const std::filesystem::path& path) {
  return Deserialize(internal::ReadFile(path), path.string());
}

std::unique_ptr<BuiltinVictim> BuiltinVictim::Deserialize(
    std::string_view bytes, std::string_view source) {
  const std::string src(source);
  if (!bytes.starts_with(kMagic)) {
    throw ParseError(src, 1, "missing ADVFORGE-VICTIM magic header");
  }
  try {
    const json body = json::parse(bytes.substr(kMagic.size()));
    const int version = body.at("version").get<int>();
    if (version != kFormatVersion) {
      throw ParseError(src, 2,
                       "unsupported victim format version " +
                           std::to_string(version));
    }
    const auto kind = ParseVictimKind(body.at("kind").get<std::string>());
    if (!kind) throw ParseError(src, 2, "unknown victim kind");
    auto vocab = body.at("vocabulary").get<std::vector<std::string>>();
    std::unique_ptr<BuiltinVictim> out;
    if (*kind == VictimKind::kLogisticRegression) {
      out = std::make_unique<LinearBowVictim>(
          std::move(vocab), MatrixFrom(body, "weights"),
          body.at("bias").get<Vector>());
    } else {
      out = std::make_unique<MlpVictim>(
          std::move(vocab), MatrixFrom(body, "embeddings"),
          MatrixFrom(body, "w1"), body.at("b1").get<Vector>(),
          MatrixFrom(body, "w2"), body.at("b2").get<Vector>());
    }
    if (out->num_labels() != body.at("num_labels").get<int>()) {
      throw ParseError(src, 2, "num_labels disagrees with weight shapes");
    }
    return out;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(src, 2, e.what());
  }
}

}  // namespace advforge
