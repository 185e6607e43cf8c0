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


// Checked-in prompt goldens built from the fixture graph and questions.
// Set KGD_UPDATE_GOLDENS=1 to rewrite them.

#ifndef KGDECODE_TESTS_GOLDEN_PROMPTS_H_
#define KGDECODE_TESTS_GOLDEN_PROMPTS_H_

#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "core/embedding.h"
#include "core/kg_store.h"
#include "core/path_scoring.h"
#include "core/pipeline.h"
#include "core/prompting.h"
#include "core/question.h"
#include "test_util.h"

#ifndef KGD_SOURCE_DIR
#error "KGD_SOURCE_DIR must be defined"
#endif

namespace test {

struct GoldenCase {
  std::string name;
  std::string question_id;
  kgd::PlusPolicy plus;
  std::optional<std::string> mask_form;
};

inline std::vector<GoldenCase> GoldenCases() {
  using K = kgd::PlusPolicy::Kind;
  return {
      {"currency_top1", "fx-currency", {K::kTop1, 1, 0.5}, "[MASK]"},
      {"guitar_topk2", "fx-guitar", {K::kTopK, 2, 0.5}, "[MASK]"},
      {"lyricist_threshold", "fx-lyricist", {K::kThreshold, 1, 0.6},
       "<hidden>"},
      {"two_topics_unmasked", "fx-two", {K::kTop1, 1, 0.5}, std::nullopt},
  };
}

inline std::string GoldenPath(const std::string& file) {
  return std::string(KGD_SOURCE_DIR) + "/tests/golden/prompts/" + file;
}

struct GoldenResult {
  std::string name;
  kgd::PromptPair built;
  kgd::ScoredPathSet scored;
  std::string want_original;
  std::string want_masked;
};

// Builds every case. With KGD_UPDATE_GOLDENS set the files are rewritten
// first, so the comparison trivially holds.
inline std::vector<GoldenResult> BuildGoldenPrompts() {
  const kgd::KnowledgeGraph kg =
      kgd::LoadTriplesFile(DataPath("fixture_kg.tsv"));
  const auto questions =
      kgd::LoadDatasetFile(DataPath("fixture_questions.jsonl"));
  const kgd::HashingEmbedder embedder;
  const kgd::PromptTemplate tmpl = kgd::PromptTemplate::Default();
  const bool update = std::getenv("KGD_UPDATE_GOLDENS") != nullptr;

  std::vector<GoldenResult> out;
  for (const GoldenCase& c : GoldenCases()) {
    const kgd::QuestionInstance* q = nullptr;
    for (const auto& cand : questions) {
      if (cand.id == c.question_id) q = &cand;
    }
    if (q == nullptr) throw std::runtime_error("no question " + c.question_id);
    const auto texts = kgd::CollectPathTexts(kg, *q, 2);
    GoldenResult r;
    r.name = c.name;
    r.scored = kgd::ScorePaths(embedder, q->question, texts, c.plus);
    r.built = kgd::BuildPrompts(tmpl, *q, r.scored, c.mask_form);
    if (update) {
      std::ofstream(GoldenPath(c.name + ".original.txt"), std::ios::binary)
          << r.built.original;
      std::ofstream(GoldenPath(c.name + ".masked.txt"), std::ios::binary)
          << r.built.masked;
    }
    r.want_original = ReadPath(GoldenPath(c.name + ".original.txt"));
    r.want_masked = ReadPath(GoldenPath(c.name + ".masked.txt"));
    out.push_back(std::move(r));
  }
  return out;
}

// Splices the mask form into `original` over every span (nullopt keeps the
// span text). Equal to `masked` exactly when the two prompts differ only on
// the plus-set spans.
inline std::string SpliceSpans(const kgd::PromptPair& pp,
                               const std::optional<std::string>& mask_form) {
  std::string rebuilt;
  std::size_t at = 0;
  for (const auto& sp : pp.masked_spans) {
    if (sp.begin < at) return "<overlapping spans>";
    rebuilt += pp.original.substr(at, sp.begin - at);
    rebuilt += mask_form ? *mask_form
                         : pp.original.substr(sp.begin, sp.end - sp.begin);
    at = sp.end;
  }
  return rebuilt + pp.original.substr(at);
}

}  // namespace test

#endif  // KGDECODE_TESTS_GOLDEN_PROMPTS_H_
