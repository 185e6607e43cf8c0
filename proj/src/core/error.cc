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

#include "core/error.h"

namespace kgd {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kLookup: return "lookup";
    case ErrorCode::kEncoding: return "encoding";
    case ErrorCode::kCompile: return "compile";
    case ErrorCode::kDeadState: return "dead-state";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kTemplate: return "template";
    case ErrorCode::kDataset: return "dataset";
    case ErrorCode::kExhausted: return "decode-exhausted";
    case ErrorCode::kProvider: return "provider";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kDeadEnd: return "dead-end";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace kgd
