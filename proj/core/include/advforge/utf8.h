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

#ifndef ADVFORGE_UTF8_H_
#define ADVFORGE_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace advforge::utf8 {

// One decoded scalar value and the byte range it occupies. Invalid bytes
// decode to U+FFFD with a one-byte extent, so byte offsets stay exact.
struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

std::vector<CodePoint> Decode(std::string_view text);
std::u32string ToU32(std::string_view text);
std::string Encode(char32_t cp);
std::string FromU32(std::u32string_view text);

bool IsWhitespace(char32_t cp);
bool IsPunctuation(char32_t cp);
bool IsAsciiAlnum(char32_t cp);

// ASCII-only case folding; other scalars are passed through unchanged.
std::string AsciiLower(std::string_view text);

}  // namespace advforge::utf8

#endif  // ADVFORGE_UTF8_H_
