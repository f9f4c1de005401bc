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

#ifndef ADVFORGE_ERROR_H_
#define ADVFORGE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advforge {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The query ledger refused an access because the budget is spent.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted() : Error("query budget exhausted") {}
};

class RemoteError : public Error {
 public:
  using Error::Error;
};

class GradientUnsupported : public Error {
 public:
  using Error::Error;
};

// An attacker touched the victim through a channel its accessibility class
// does not permit. This is a programming error in the attacker.
class AccessViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateDataset : public Error {
 public:
  using Error::Error;
};

class IncompatibleAttacker : public Error {
 public:
  using Error::Error;
};

class UnknownAttacker : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ProviderUnavailable : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

class DigestMismatch : public Error {
 public:
  using Error::Error;
};

class ManifestConflict : public Error {
 public:
  using Error::Error;
};

class UnknownResource : public Error {
 public:
  using Error::Error;
};

// Malformed resource file. `line` is 1-based; 0 when the error is not tied
// to a particular line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& reason)
      : Error(source + ":" + std::to_string(line) + ": " + reason),
        source_(std::move(source)),
        line_(line),
        reason_(reason) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string reason_;
};

}  // namespace advforge

#endif  // ADVFORGE_ERROR_H_
