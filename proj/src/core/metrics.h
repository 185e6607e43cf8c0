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

#ifndef KGDECODE_CORE_METRICS_H_
#define KGDECODE_CORE_METRICS_H_

#include <string>
#include <string_view>
#include <vector>

namespace kgd {

// kCaseFold compares after trimming and ASCII lowercasing; kStrict compares
// bytes after trimming.
enum class MatchMode { kCaseFold, kStrict };

std::string NormalizeAnswer(std::string_view label, MatchMode mode);

// 1 iff `top1` is in `gold`. Throws Error(kDataset) for an empty gold set.
int HitAt1(std::string_view top1, const std::vector<std::string>& gold,
           MatchMode mode = MatchMode::kCaseFold);

struct F1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set-based precision/recall/F1 (inputs are de-duplicated after
// normalization). Empty prediction scores (0, 0, 0). Throws Error(kDataset)
// for an empty gold set.
F1Score ComputeF1(const std::vector<std::string>& predicted,
                  const std::vector<std::string>& gold,
                  MatchMode mode = MatchMode::kCaseFold);

}  // namespace kgd

#endif  // KGDECODE_CORE_METRICS_H_
