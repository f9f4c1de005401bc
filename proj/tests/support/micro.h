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


#ifndef ADVFORGE_TESTS_SUPPORT_MICRO_H_
#define ADVFORGE_TESTS_SUPPORT_MICRO_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "advforge/advforge.h"

namespace advforge::testing {

// A tiny attack problem over a linear bag-of-words victim. Every
// substitution source (embedding neighbors, synonyms, sememes) offers the
// same candidates per position, so all word attackers share one search
// space that an exhaustive scan can cover.
struct MicroInstance {
  std::unique_ptr<LinearBowVictim> victim;
  AttackResources resources;
  Sample sample;
  std::vector<std::string> words;
  // Candidates per position, lexicographic; empty means fixed.
  std::vector<std::vector<std::string>> space;
  std::map<std::string, double> weights;
  double bias = 0.0;
};

// `words[i]` may be replaced by any of `space[i]`. Class-1 logit is the sum
// of `weights` over tokens plus `bias`; the sample label is the victim's
// prediction on the unmodified text.
MicroInstance BuildMicroInstance(
    const std::vector<std::string>& words,
    const std::vector<std::vector<std::string>>& space,
    const std::map<std::string, double>& weights, double bias);

// Random instance with 1..max_positions positions and 1..max_candidates
// candidates each; the original text is always classified as 1.
MicroInstance RandomMicroInstance(std::uint64_t seed,
                                  std::size_t max_positions = 3,
                                  std::size_t max_candidates = 3);

// True when some combination of substitutions (original kept as an option at
// every position) changes the prediction.
bool BruteForceFlippable(const Victim& victim,
                         const std::vector<std::string>& words,
                         const std::vector<std::vector<std::string>>& space,
                         int label);

struct SingleSubstitution {
  std::size_t position = 0;
  std::string word;
  std::string text;
  double label_prob = 0.0;
};

// The single substitution with the lowest probability of `label`; ties go to
// the lowest position, then the lexicographically smallest word.
std::optional<SingleSubstitution> BestSingleSubstitution(
    const Victim& victim, const std::vector<std::string>& words,
    const std::vector<std::vector<std::string>>& space, int label);

}  // namespace advforge::testing

#endif  // ADVFORGE_TESTS_SUPPORT_MICRO_H_
