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

#include <cmath>

#include "advforge/error.h"
#include "advforge/victim.h"
#include "http_client.h"
#include "json.hpp"

namespace advforge {

namespace {

using nlohmann::json;

json ParseBody(const std::string& url, const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw RemoteError(url + ": malformed JSON response: " + e.what());
  }
}

[[noreturn]] void ThrowStatus(const std::string& url, int status,
                              const std::string& body) {
  std::string detail;
  try {
    const json j = json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) {
      detail = j["error"].get<std::string>();
    }
  } catch (const std::exception&) {
  }
  throw RemoteError(url + ": HTTP " + std::to_string(status) +
                    (detail.empty() ? "" : ": " + detail));
}

const json& Field(const std::string& url, const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw RemoteError(url + ": response missing key '" + key + "'");
  }
  return j.at(key);
}

json TextsRequest(std::span<const std::string> texts) {
  json req;
  req["texts"] = json::array();
  for (const std::string& t : texts) req["texts"].push_back(t);
  return req;
}

}  // namespace

RemoteVictim::RemoteVictim(std::string endpoint,
                           std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  const std::string url = internal::JoinUrl(endpoint_, "/info");
  internal::HttpResponse res;
  try {
    res = internal::HttpGet(url, timeout_);
  } catch (const NetworkError& e) {
    throw RemoteError(e.what());
  }
  if (res.status != 200) ThrowStatus(url, res.status, res.body);
  const json info = ParseBody(url, res.body);
  try {
    name_ = Field(url, info, "name").get<std::string>();
    num_labels_ = Field(url, info, "num_labels").get<int>();
    supports_gradient_ = Field(url, info, "supports_gradient").get<bool>();
    const json& dim = Field(url, info, "embed_dim");
    if (!dim.is_null()) embed_dim_ = dim.get<std::size_t>();
  } catch (const json::exception& e) {
    throw RemoteError(url + ": bad /info schema: " + e.what());
  }
  if (num_labels_ < 1) throw RemoteError(url + ": num_labels must be >= 1");
}

std::string RemoteVictim::Post(const std::string& path,
                               const std::string& body,
                               int* status_out) const {
  const std::string url = internal::JoinUrl(endpoint_, path);
  internal::HttpResponse res;
  try {
    res = internal::HttpPostJson(url, body, timeout_);
  } catch (const NetworkError& e) {
    throw RemoteError(e.what());
  }
  if (status_out != nullptr) *status_out = res.status;
  if (res.status != 200 && (status_out == nullptr || res.status != 501)) {
    ThrowStatus(url, res.status, res.body);
  }
  return res.body;
}

std::vector<VictimOutput> RemoteVictim::Probabilities(
    std::span<const std::string> texts) const {
  if (texts.empty()) return {};
  const std::string url = internal::JoinUrl(endpoint_, "/probabilities");
  const json resp =
      ParseBody(url, Post("/probabilities", TextsRequest(texts).dump(), nullptr));
  const json& rows = Field(url, resp, "probabilities");
  if (!rows.is_array() || rows.size() != texts.size()) {
    throw RemoteError(url + ": expected " + std::to_string(texts.size()) +
                      " probability rows");
  }
  std::vector<VictimOutput> out;
  out.reserve(rows.size());
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(num_labels_)) {
      throw RemoteError(url + ": probability row has wrong length");
    }
    Vector p;
    double sum = 0.0;
    for (const json& v : row) {
      if (!v.is_number()) throw RemoteError(url + ": non-numeric probability");
      const double x = v.get<double>();
      if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw RemoteError(url + ": probability outside [0, 1]");
      }
      p.push_back(x);
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw RemoteError(url + ": probabilities do not sum to 1");
    }
    out.push_back(MakeVictimOutput(std::move(p)));
  }
  return out;
}

std::vector<int> RemoteVictim::Predict(
    std::span<const std::string> texts) const {
  if (texts.empty()) return {};
  const std::string url = internal::JoinUrl(endpoint_, "/predict");
  const json resp =
      ParseBody(url, Post("/predict", TextsRequest(texts).dump(), nullptr));
  const json& labels = Field(url, resp, "labels");
  if (!labels.is_array() || labels.size() != texts.size()) {
    throw RemoteError(url + ": expected " + std::to_string(texts.size()) +
                      " labels");
  }
  std::vector<int> out;
  for (const json& l : labels) {
    if (!l.is_number_integer()) throw RemoteError(url + ": non-integer label");
    const int v = l.get<int>();
    if (v < 0 || v >= num_labels_) throw RemoteError(url + ": label out of range");
    out.push_back(v);
  }
  return out;
}

std::vector<GradientOutput> RemoteVictim::Gradients(
    std::span<const std::string> texts, std::span<const int> labels) const {
  const std::string url = internal::JoinUrl(endpoint_, "/gradient");
  if (!supports_gradient_) {
    throw GradientUnsupported(url + ": victim advertises no gradient support");
  }
  if (texts.empty()) return {};
  json req = TextsRequest(texts);
  req["labels"] = std::vector<int>(labels.begin(), labels.end());
  int status = 0;
  const std::string body = Post("/gradient", req.dump(), &status);
  if (status == 501) {
    throw GradientUnsupported(url + ": HTTP 501");
  }
  const json resp = ParseBody(url, body);
  const json& tokens = Field(url, resp, "tokens");
  const json& grads = Field(url, resp, "gradients");
  if (!tokens.is_array() || !grads.is_array() ||
      tokens.size() != texts.size() || grads.size() != texts.size()) {
    throw RemoteError(url + ": gradient response size mismatch");
  }
  std::vector<GradientOutput> out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    GradientOutput g;
    try {
      g.tokens = tokens[i].get<std::vector<std::string>>();
      const auto rows = grads[i].get<std::vector<std::vector<double>>>();
      if (rows.size() != g.tokens.size()) {
        throw RemoteError(url + ": gradient rows != token count");
      }
      const std::size_t cols =
          rows.empty() ? embed_dim_.value_or(0) : rows.front().size();
      Matrix m(rows.size(), cols);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
          throw RemoteError(url + ": ragged gradient matrix");
        }
        for (std::size_t c = 0; c < cols; ++c) {
          if (!std::isfinite(rows[r][c])) {
            throw RemoteError(url + ": non-finite gradient entry");
          }
          m(r, c) = rows[r][c];
        }
      }
      g.grads = std::move(m);
    } catch (const json::exception& e) {
      throw RemoteError(url + ": bad gradient schema: " + e.what());
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::unique_ptr<Victim> OpenVictim(std::string_view spec) {
  if (spec.starts_with("builtin:")) {
    return BuiltinVictim::Load(std::string(spec.substr(8)));
  }
  if (spec.starts_with("remote:")) {
    return std::make_unique<RemoteVictim>(std::string(spec.substr(7)));
  }
  throw ConfigError("victim spec must be builtin:<path> or remote:<url>, got '" +
                    std::string(spec) + "'");
}

}  // namespace advforge
