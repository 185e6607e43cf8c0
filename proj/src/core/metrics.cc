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

#include "core/metrics.h"

#include <set>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

std::string NormalizeAnswer(std::string_view label, MatchMode mode) {
  std::string_view t = Trim(label);
  return mode == MatchMode::kCaseFold ? AsciiLower(t) : std::string(t);
}

namespace {

std::set<std::string> NormalizedSet(const std::vector<std::string>& labels,
                                    MatchMode mode) {
  std::set<std::string> out;
  for (const std::string& l : labels) out.insert(NormalizeAnswer(l, mode));
  return out;
}

}  // namespace

int HitAt1(std::string_view top1, const std::vector<std::string>& gold,
           MatchMode mode) {
  if (gold.empty()) throw Error(ErrorCode::kDataset, "empty gold answer set");
  const std::string key = NormalizeAnswer(top1, mode);
  for (const std::string& g : gold) {
    if (NormalizeAnswer(g, mode) == key) return 1;
  }
  return 0;
}

F1Score ComputeF1(const std::vector<std::string>& predicted,
                  const std::vector<std::string>& gold, MatchMode mode) {
  if (gold.empty()) throw Error(ErrorCode::kDataset, "empty gold answer set");
  const auto p = NormalizedSet(predicted, mode);
  const auto g = NormalizedSet(gold, mode);
  std::size_t common = 0;
  for (const std::string& x : p) common += g.count(x);
  F1Score s;
  s.precision = p.empty() ? 0.0 : double(common) / double(p.size());
  s.recall = double(common) / double(g.size());
  s.f1 = (s.precision + s.recall) > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

}  // namespace kgd
