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

#include "advforge/resources.h"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

#include "advforge/error.h"
#include "http_client.h"
#include "json.hpp"
#include "tsv.h"

#ifndef ADVFORGE_DEFAULT_DATA_DIR
#define ADVFORGE_DEFAULT_DATA_DIR "data"
#endif

namespace advforge {

namespace fs = std::filesystem;

namespace {

using Json = nlohmann::json;

constexpr std::array<std::pair<ResourceKind, std::string_view>, 10> kKinds{{
    {ResourceKind::kEmbeddings, "embeddings"},
    {ResourceKind::kSynonyms, "synonyms"},
    {ResourceKind::kSememes, "sememes"},
    {ResourceKind::kCharmap, "charmap"},
    {ResourceKind::kKeyboard, "keyboard"},
    {ResourceKind::kRules, "rules"},
    {ResourceKind::kPipeline, "pipeline"},
    {ResourceKind::kLm, "lm"},
    {ResourceKind::kVictim, "victim"},
    {ResourceKind::kDataset, "dataset"},
}};

constexpr auto kDownloadTimeout = std::chrono::milliseconds(30000);

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw Error("sha256 initialisation failed");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void Update(const void* data, std::size_t n) {
    EVP_DigestUpdate(ctx_, data, n);
  }

  std::string Hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kDigits[md[i] >> 4];
      out += kDigits[md[i] & 0xf];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

std::string Sha256File(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    h.Update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
  return h.Hex();
}

bool IsHexDigest(std::string_view s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

// Unique per process, thread and call, so concurrent fetches never share a
// temp file.
std::string UniqueSuffix() {
  static std::atomic<std::uint64_t> counter{0};
  return std::to_string(::getpid()) + "-" +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
         "-" + std::to_string(counter.fetch_add(1));
}

std::string EnvOr(const char* name) {
  const char* v = std::getenv(name);
  return v != nullptr ? std::string(v) : std::string();
}

}  // namespace

std::string_view ResourceKindName(ResourceKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ResourceKind> ParseResourceKind(std::string_view name) {
  for (const auto& [k, n] : kKinds) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string Sha256Hex(std::string_view bytes) {
  Sha256 h;
  h.Update(bytes.data(), bytes.size());
  return h.Hex();
}

std::string Sha256Path(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) return Sha256File(path);
  std::vector<std::string> lines;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    lines.push_back(fs::relative(entry.path(), path).generic_string() + " " +
                    Sha256File(entry.path()) + "\n");
  }
  std::sort(lines.begin(), lines.end());
  std::string joined;
  for (const std::string& l : lines) joined += l;
  return Sha256Hex(joined);
}

fs::path DefaultCacheDir() {
  if (std::string v = EnvOr("ADVFORGE_CACHE"); !v.empty()) return v;
  if (std::string v = EnvOr("XDG_CACHE_HOME"); !v.empty()) {
    return fs::path(v) / "advforge";
  }
  if (std::string v = EnvOr("HOME"); !v.empty()) {
    return fs::path(v) / ".cache" / "advforge";
  }
  return fs::temp_directory_path() / "advforge-cache";
}

fs::path DefaultDataDir() {
  if (std::string v = EnvOr("ADVFORGE_DATA"); !v.empty()) return v;
  return ADVFORGE_DEFAULT_DATA_DIR;
}

FetchResult Fetch(const ResourceDescriptor& d, const fs::path& cache_dir) {
  FetchResult result;
  if (!d.url) {
    std::error_code ec;
    if (!fs::exists(d.path, ec)) {
      throw IoError("resource '" + d.id + "' missing at " + d.path.string());
    }
    const std::string actual = Sha256Path(d.path);
    if (actual != d.sha256) {
      throw DigestMismatch("resource '" + d.id + "' at " + d.path.string() +
                           ": expected sha256 " + d.sha256 + ", found " +
                           actual);
    }
    result.path = d.path;
    return result;
  }

  const fs::path dir = cache_dir / "sha256";
  const fs::path target = dir / d.sha256;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string());

  if (fs::exists(target, ec)) {
    if (Sha256File(target) == d.sha256) {
      result.path = target;
      return result;
    }
    const fs::path quarantine = cache_dir / "quarantine";
    fs::create_directories(quarantine, ec);
    const fs::path moved = quarantine / (d.sha256 + "-" + UniqueSuffix());
    fs::rename(target, moved, ec);
    // A concurrent caller may already have moved it; either way it is gone.
    if (!ec) result.quarantined = moved;
  }

  const internal::HttpResponse resp = internal::HttpGet(*d.url, kDownloadTimeout);
  if (resp.status != 200) {
    throw NetworkError("GET " + *d.url + " failed with HTTP status " +
                       std::to_string(resp.status));
  }
  const std::string actual = Sha256Hex(resp.body);
  if (actual != d.sha256) {
    throw DigestMismatch("download of '" + d.id + "' from " + *d.url +
                         ": expected sha256 " + d.sha256 + ", got " + actual);
  }
  const fs::path tmp = dir / (".tmp-" + d.sha256 + "-" + UniqueSuffix());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(resp.body.data(), static_cast<std::streamsize>(resp.body.size()));
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot install " + target.string());
  }
  result.path = target;
  result.downloaded = true;
  return result;
}

ResourceRegistry ResourceRegistry::Bundled(const fs::path& data_dir) {
  const fs::path manifest = data_dir / "manifest.json";
  ResourceRegistry registry;
  registry.Add(ParseManifest(internal::ReadFile(manifest), data_dir,
                             manifest.string()));
  return registry;
}

std::vector<ResourceDescriptor> ResourceRegistry::ParseManifest(
    std::string_view json, const fs::path& base_dir, std::string_view source) {
  const std::string src(source);
  Json root;
  try {
    root = Json::parse(json);
  } catch (const Json::parse_error& e) {
    throw ParseError(src, 0, e.what());
  }
  if (!root.is_array()) throw ParseError(src, 0, "manifest must be a JSON array");
  std::vector<ResourceDescriptor> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const Json& e = root[i];
    const std::string where = "entry " + std::to_string(i) + ": ";
    auto str = [&](const char* key) -> std::optional<std::string> {
      if (!e.contains(key)) return std::nullopt;
      if (!e[key].is_string()) {
        throw ParseError(src, 0, where + "'" + key + "' must be a string");
      }
      return e[key].get<std::string>();
    };
    if (!e.is_object()) throw ParseError(src, 0, where + "not an object");
    for (const auto& [key, unused] : e.items()) {
      (void)unused;
      if (key != "id" && key != "kind" && key != "url" && key != "sha256" &&
          key != "path") {
        throw ParseError(src, 0, where + "unknown key '" + key + "'");
      }
    }
    ResourceDescriptor d;
    const auto id = str("id");
    if (!id || id->empty()) throw ParseError(src, 0, where + "missing id");
    d.id = *id;
    const auto kind = str("kind");
    const auto parsed = kind ? ParseResourceKind(*kind) : std::nullopt;
    if (!parsed) throw ParseError(src, 0, where + "bad kind for '" + d.id + "'");
    d.kind = *parsed;
    d.url = str("url");
    const auto sha = str("sha256");
    if (!sha || !IsHexDigest(*sha)) {
      throw ParseError(src, 0, where + "'" + d.id +
                                   "' needs a lower-case hex sha256 digest");
    }
    d.sha256 = *sha;
    if (const auto p = str("path")) {
      d.path = fs::path(*p).is_absolute() ? fs::path(*p) : base_dir / *p;
    } else if (!d.url) {
      throw ParseError(src, 0, where + "'" + d.id + "' needs a path or url");
    }
    out.push_back(std::move(d));
  }
  return out;
}

void ResourceRegistry::Add(std::vector<ResourceDescriptor> descriptors) {
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    const std::string& id = descriptors[i].id;
    bool dup = Contains(id);
    for (std::size_t j = 0; j < i && !dup; ++j) dup = descriptors[j].id == id;
    if (dup) throw ManifestConflict("duplicate resource id '" + id + "'");
  }
  for (ResourceDescriptor& d : descriptors) entries_.push_back(std::move(d));
}

void ResourceRegistry::Merge(const fs::path& manifest) {
  Add(ParseManifest(internal::ReadFile(manifest), manifest.parent_path(),
                    manifest.string()));
}

bool ResourceRegistry::Contains(std::string_view id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ResourceDescriptor& d) { return d.id == id; });
}

const ResourceDescriptor& ResourceRegistry::Get(std::string_view id) const {
  for (const ResourceDescriptor& d : entries_) {
    if (d.id == id) return d;
  }
  std::string known;
  for (const ResourceDescriptor& d : entries_) {
    known += (known.empty() ? "" : ", ") + d.id;
  }
  throw UnknownResource("unknown resource '" + std::string(id) +
                        "'; known: " + known);
}

std::vector<Sample> LoadDataset(const fs::path& path,
                                const LanguagePipeline& pipeline) {
  std::vector<Sample> out;
  internal::ForEachTsvLine(
      path, [&](std::size_t line, const std::vector<std::string>& fields) {
        if (fields.size() != 2) {
          throw ParseError(path.string(), line, "expected label<TAB>text");
        }
        int label = 0;
        const std::string& l = fields[0];
        const auto [ptr, ec] =
            std::from_chars(l.data(), l.data() + l.size(), label);
        if (ec != std::errc() || ptr != l.data() + l.size() || label < 0) {
          throw ParseError(path.string(), line, "bad label '" + l + "'");
        }
        out.push_back(MakeSample(fields[1], label, pipeline));
      });
  return out;
}

LoadedResource LoadResource(ResourceKind kind, const fs::path& path,
                            std::shared_ptr<const LanguagePipeline> pipeline) {
  switch (kind) {
    case ResourceKind::kEmbeddings:
      return std::make_shared<const EmbeddingTable>(EmbeddingTable::Load(path));
    case ResourceKind::kSynonyms:
      return std::make_shared<const SynonymProvider>(
          SynonymProvider::Load(path, std::move(pipeline)));
    case ResourceKind::kSememes:
      return std::make_shared<const SememeInventory>(
          SememeInventory::Load(path));
    case ResourceKind::kCharmap:
    case ResourceKind::kKeyboard:
      return std::make_shared<const CharMap>(CharMap::Load(path));
    case ResourceKind::kRules:
      return std::make_shared<const ParaphraseRules>(
          ParaphraseRules::Load(path));
    case ResourceKind::kPipeline:
      return std::make_shared<const LanguagePipeline>(
          LanguagePipeline::Load(path));
    case ResourceKind::kLm:
      return std::make_shared<const NGramLM>(NGramLM::Load(path));
    case ResourceKind::kVictim:
      return std::shared_ptr<const Victim>(BuiltinVictim::Load(path));
    case ResourceKind::kDataset:
      if (!pipeline) throw ConfigError("loading a dataset needs a pipeline");
      return std::make_shared<const std::vector<Sample>>(
          LoadDataset(path, *pipeline));
  }
  throw ConfigError("unknown resource kind");
}

AttackResources LoadAttackResources(const ResourceRegistry& registry,
                                    const fs::path& cache_dir) {
  auto load = [&](std::string_view id,
                  std::shared_ptr<const LanguagePipeline> pipeline) {
    const ResourceDescriptor& d = registry.Get(id);
    return LoadResource(d.kind, Fetch(d, cache_dir).path, std::move(pipeline));
  };
  AttackResources res;
  res.pipeline = std::get<std::shared_ptr<const LanguagePipeline>>(
      load("en.pipeline", nullptr));
  res.embeddings = std::get<std::shared_ptr<const EmbeddingTable>>(
      load("en.embeddings", nullptr));
  res.synonyms = std::get<std::shared_ptr<const SynonymProvider>>(
      load("en.synonyms", res.pipeline));
  res.sememes = std::get<std::shared_ptr<const SememeInventory>>(
      load("en.sememes", nullptr));
  res.visual =
      std::get<std::shared_ptr<const CharMap>>(load("en.charmap", nullptr));
  res.keyboard =
      std::get<std::shared_ptr<const CharMap>>(load("en.keyboard", nullptr));
  res.rules = std::get<std::shared_ptr<const ParaphraseRules>>(
      load("en.rules", nullptr));
  res.lm = std::get<std::shared_ptr<const NGramLM>>(load("en.lm", nullptr));
  return res;
}

}  // namespace advforge
