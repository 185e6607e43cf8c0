// Copyright 2026 The kgdecode Authors.
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

#ifndef KGDECODE_CORE_ERROR_H_
#define KGDECODE_CORE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgd {

// Mirrors kgd_status in the public C header; values must stay in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kLookup = 3,
  kEncoding = 4,
  kCompile = 5,
  kDeadState = 6,
  kShape = 7,
  kNumeric = 8,
  kTemplate = 9,
  kDataset = 10,
  kExhausted = 11,
  kProvider = 12,
  kIo = 13,
  kConfig = 14,
  kProtocol = 15,
  kDeadEnd = 16,
  kInternal = 99,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Malformed input record. `line` is 1-based; 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse,
              line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EncodingError : public Error {
 public:
  EncodingError(std::size_t offset, const std::string& message)
      : Error(ErrorCode::kEncoding,
              "byte offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class LookupError : public Error {
 public:
  explicit LookupError(const std::string& label)
      : Error(ErrorCode::kLookup, "unknown entity: " + label), label_(label) {}

  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class ProviderError : public Error {
 public:
  ProviderError(const std::string& message, bool retryable)
      : Error(ErrorCode::kProvider, message), retryable_(retryable) {}

  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

}  // namespace kgd

#endif  // KGDECODE_CORE_ERROR_H_
