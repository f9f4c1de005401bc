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

#include <string>
#include <vector>

#include "advforge/advforge.h"
#include "bench_data.h"
#include "benchmark/benchmark.h"

namespace advforge::bench {
namespace {

std::vector<std::string> Texts(std::size_t n) {
  std::vector<std::string> out;
  const auto& s = CorrectSamples();
  for (std::size_t i = 0; i < n; ++i) out.push_back(s[i % s.size()].text);
  return out;
}

void BM_Probabilities(benchmark::State& state) {
  const auto texts = Texts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Victim().Probabilities(texts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Probabilities)->Arg(1)->Arg(64);

void BM_Gradients(benchmark::State& state) {
  const auto texts = Texts(static_cast<std::size_t>(state.range(0)));
  const std::vector<int> labels(texts.size(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Victim().Gradients(texts, labels));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Gradients)->Arg(1)->Arg(64);

void BM_Tokenize(benchmark::State& state) {
  const auto texts = Texts(64);
  for (auto _ : state) {
    for (const auto& t : texts) {
      benchmark::DoNotOptimize(Tokenize(t, *Resources().pipeline));
    }
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Tokenize);

}  // namespace
}  // namespace advforge::bench
