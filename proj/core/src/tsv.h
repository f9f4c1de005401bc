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

#ifndef ADVFORGE_SRC_TSV_H_
#define ADVFORGE_SRC_TSV_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace advforge::internal {

// Calls `fn(line_number, fields)` for every non-empty line of a UTF-8 TSV
// file. A trailing '\r' is a format error (LF line endings only).
void ForEachTsvLine(
    const std::filesystem::path& path,
    const std::function<void(std::size_t, const std::vector<std::string>&)>&
        fn);

std::vector<std::string> Split(std::string_view text, char sep);

std::string ReadFile(const std::filesystem::path& path);
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Parses a finite double. Returns false on junk, trailing garbage, NaN or
// infinity.
bool ParseDouble(std::string_view text, double& out);

}  // namespace advforge::internal

#endif  // ADVFORGE_SRC_TSV_H_
