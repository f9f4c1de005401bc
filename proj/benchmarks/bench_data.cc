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

#include "bench_data.h"

#include <filesystem>

namespace advforge::bench {
namespace {

const std::filesystem::path kData = ADVFORGE_BENCH_DATA_DIR;

}  // namespace

const AttackResources& Resources() {
  static const auto* res = new AttackResources(LoadAttackResources(
      ResourceRegistry::Bundled(kData),
      std::filesystem::temp_directory_path() / "advforge-bench"));
  return *res;
}

const BuiltinVictim& Victim() {
  static const auto* v = BuiltinVictim::Load(kData / "en" / "toy.victim").release();
  return *v;
}

const std::vector<Sample>& CorrectSamples() {
  static const auto* out = [] {
    auto* s = new std::vector<Sample>;
    for (Sample& x : LoadDataset(kData / "en" / "corpus_test.tsv",
                                 *Resources().pipeline)) {
      if (Victim().Predict(std::span<const std::string>(&x.text, 1))[0] ==
          x.label) {
        s->push_back(std::move(x));
      }
    }
    return s;
  }();
  return *out;
}

}  // namespace advforge::bench
