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

#ifndef ADVFORGE_RESOURCES_H_
#define ADVFORGE_RESOURCES_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "advforge/attack.h"
#include "advforge/embedding.h"
#include "advforge/metrics.h"
#include "advforge/substitution.h"
#include "advforge/text.h"
#include "advforge/victim.h"

namespace advforge {

enum class ResourceKind {
  kEmbeddings,
  kSynonyms,
  kSememes,
  kCharmap,
  kKeyboard,
  kRules,
  kPipeline,
  kLm,
  kVictim,
  kDataset,
};

std::string_view ResourceKindName(ResourceKind kind);
std::optional<ResourceKind> ParseResourceKind(std::string_view name);

struct ResourceDescriptor {
  std::string id;
  ResourceKind kind = ResourceKind::kDataset;
  // Remote source. When set the file lives in the content-addressed cache.
  std::optional<std::string> url;
  // Lower-case hex. For directory resources: the digest of the sorted
  // "relative-name<SP>file-digest<LF>" lines.
  std::string sha256;
  // Local location (absolute, or relative to the manifest that declared it).
  std::filesystem::path path;
};

// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view bytes);
// Digest of a file, or of a directory as described above. Throws IoError.
std::string Sha256Path(const std::filesystem::path& path);

// $ADVFORGE_CACHE, else $XDG_CACHE_HOME/advforge, else ~/.cache/advforge.
std::filesystem::path DefaultCacheDir();
// $ADVFORGE_DATA, else the data directory of the source tree.
std::filesystem::path DefaultDataDir();

struct FetchResult {
  std::filesystem::path path;
  // A network download happened.
  bool downloaded = false;
  // A corrupt cache entry was moved aside before downloading.
  std::optional<std::filesystem::path> quarantined;
};

// Resolves a descriptor to a verified local file.
//  - url set: returns cache_dir/sha256/<digest> when it verifies; otherwise
//    moves a corrupt entry to cache_dir/quarantine/, downloads to a temp file
//    in the same directory, verifies and renames it into place. Throws
//    NetworkError (naming the URL) or DigestMismatch.
//  - url unset: verifies `path` in place. Throws DigestMismatch or IoError.
FetchResult Fetch(const ResourceDescriptor& descriptor,
                  const std::filesystem::path& cache_dir);

class ResourceRegistry {
 public:
  ResourceRegistry() = default;

  // The bundled manifest at `data_dir`/manifest.json.
  static ResourceRegistry Bundled(
      const std::filesystem::path& data_dir = DefaultDataDir());

  // Parses a JSON array of descriptors; relative paths resolve against
  // `base_dir`. Throws ParseError.
  static std::vector<ResourceDescriptor> ParseManifest(
      std::string_view json, const std::filesystem::path& base_dir,
      std::string_view source);

  // Adds entries; throws ManifestConflict on a duplicate id (nothing is
  // added in that case).
  void Add(std::vector<ResourceDescriptor> descriptors);
  // Reads a user manifest file and adds its entries.
  void Merge(const std::filesystem::path& manifest);

  std::span<const ResourceDescriptor> descriptors() const { return entries_; }
  bool Contains(std::string_view id) const;
  // Throws UnknownResource.
  const ResourceDescriptor& Get(std::string_view id) const;

 private:
  std::vector<ResourceDescriptor> entries_;
};

// Reads `label<TAB>text` lines. Throws ParseError with line numbers.
std::vector<Sample> LoadDataset(const std::filesystem::path& path,
                                const LanguagePipeline& pipeline);

using LoadedResource =
    std::variant<std::shared_ptr<const EmbeddingTable>,
                 std::shared_ptr<const SynonymProvider>,
                 std::shared_ptr<const SememeInventory>,
                 std::shared_ptr<const CharMap>,
                 std::shared_ptr<const ParaphraseRules>,
                 std::shared_ptr<const LanguagePipeline>,
                 std::shared_ptr<const NGramLM>, std::shared_ptr<const Victim>,
                 std::shared_ptr<const std::vector<Sample>>>;

// Parses the file at `path` according to `kind`. Synonym lookup and dataset
// tokenization use `pipeline` (required for datasets).
LoadedResource LoadResource(
    ResourceKind kind, const std::filesystem::path& path,
    std::shared_ptr<const LanguagePipeline> pipeline = nullptr);

// Fetches and loads every attack resource of the English pack ("en.*").
AttackResources LoadAttackResources(const ResourceRegistry& registry,
                                    const std::filesystem::path& cache_dir);

}  // namespace advforge

#endif  // ADVFORGE_RESOURCES_H_
