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

#ifndef ADVFORGE_BENCHMARKS_BENCH_DATA_H_
#define ADVFORGE_BENCHMARKS_BENCH_DATA_H_

#include <vector>

#include "advforge/advforge.h"

namespace advforge::bench {

// Lazily loaded bundled pack; shared by every benchmark.
const AttackResources& Resources();
const BuiltinVictim& Victim();
// Test split samples the victim classifies correctly.
const std::vector<Sample>& CorrectSamples();

}  // namespace advforge::bench

#endif  // ADVFORGE_BENCHMARKS_BENCH_DATA_H_
