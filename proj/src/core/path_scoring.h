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

#ifndef KGDECODE_CORE_PATH_SCORING_H_
#define KGDECODE_CORE_PATH_SCORING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core/embedding.h"

namespace kgd {

// Which scored paths count as high-scoring (masked in the contrast prompt).
struct PlusPolicy {
  enum class Kind { kTop1, kTopK, kThreshold };
  Kind kind = Kind::kTop1;
  std::size_t k = 1;
  double tau = 0.5;
};

struct ScoredEntry {
  std::string text;
  double score = 0.0;
  std::size_t source_index = 0;  // position in the caller's path list
};

// Entries sorted by (score descending, text ascending); the top-1 path is
// entries[0]. `plus` and `minus` partition the entry indexes.
struct ScoredPathSet {
  std::vector<ScoredEntry> entries;
  std::size_t top1 = 0;
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;

  bool IsPlus(std::size_t index) const;
};

// Cosine similarity between the question and each path text. Repeated texts
// are scored once (first occurrence wins). Throws Error(kInvalidArgument) for
// an empty path list and propagates ProviderError.
ScoredPathSet ScorePaths(const EmbeddingProvider& provider,
                         const std::string& question,
                         std::span<const std::string> path_texts,
                         const PlusPolicy& policy = {});

// One {"path": ..., "score": ...} object per line, in entry order.
std::string ScoresToJsonLines(const ScoredPathSet& set);

}  // namespace kgd

#endif  // KGDECODE_CORE_PATH_SCORING_H_
