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

#include "core/path_scoring.h"

#include <algorithm>
#include <unordered_set>

#include "core/error.h"
#include "json.hpp"

namespace kgd {

bool ScoredPathSet::IsPlus(std::size_t index) const {
  return std::find(plus.begin(), plus.end(), index) != plus.end();
}

ScoredPathSet ScorePaths(const EmbeddingProvider& provider,
                         const std::string& question,
                         std::span<const std::string> path_texts,
                         const PlusPolicy& policy) {
  if (path_texts.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no legal paths to score for question '" + question + "'");
  }
  std::vector<std::string> texts;
  std::vector<std::size_t> sources;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < path_texts.size(); ++i) {
    if (seen.insert(path_texts[i]).second) {
      texts.push_back(path_texts[i]);
      sources.push_back(i);
    }
  }
  const Embedding q = provider.Embed(question);
  const std::vector<Embedding> vectors = provider.EmbedBatch(texts);

  ScoredPathSet set;
  set.entries.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const double cos = std::clamp(Dot(q, vectors[i]), -1.0, 1.0);
    set.entries.push_back({std::move(texts[i]), cos, sources[i]});
  }
  std::sort(set.entries.begin(), set.entries.end(),
            [](const ScoredEntry& a, const ScoredEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.text < b.text;
            });
  set.top1 = 0;
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    bool plus = false;
    switch (policy.kind) {
      case PlusPolicy::Kind::kTop1: plus = i == 0; break;
      case PlusPolicy::Kind::kTopK: plus = i < policy.k; break;
      case PlusPolicy::Kind::kThreshold:
        plus = set.entries[i].score >= policy.tau;
        break;
    }
    (plus ? set.plus : set.minus).push_back(i);
  }
  return set;
}

std::string ScoresToJsonLines(const ScoredPathSet& set) {
  std::string out;
  for (const ScoredEntry& e : set.entries) {
    nlohmann::ordered_json j;
    j["path"] = e.text;
    j["score"] = e.score;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace kgd
