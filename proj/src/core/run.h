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

#ifndef KGDECODE_CORE_RUN_H_
#define KGDECODE_CORE_RUN_H_

#include <cstddef>
#include <memory>
#include <string>

#include "core/pipeline.h"
#include "core/run_config.h"
#include "core/sidecar.h"
#include "json.hpp"

namespace kgd {

std::shared_ptr<const Tokenizer> MakeTokenizer(const RunConfig& cfg);
std::shared_ptr<const EmbeddingProvider> MakeEmbedder(const RunConfig& cfg);
std::shared_ptr<const LmProvider> MakeLm(
    const RunConfig& cfg, std::shared_ptr<const Tokenizer> tokenizer);
EngineOptions MakeEngineOptions(const RunConfig& cfg);
EvalOptions MakeEvalOptions(const RunConfig& cfg);

// Loads the template and wires the providers named by `cfg` around `kg`.
Engine BuildEngine(const RunConfig& cfg,
                   std::shared_ptr<const KnowledgeGraph> kg);

// {id, ok, answer, top1_path, num_paths, ranked: [{path, log_score, tokens,
// legal}], error: null | {code, message}}
nlohmann::ordered_json OutcomeToJson(const QuestionOutcome& outcome);

struct DecodeSummary {
  std::string jsonl;
  std::size_t total = 0;
  std::size_t failed = 0;
};

// Decodes every question of cfg.dataset against cfg.kg. Writes cfg.out and
// cfg.trace_out when set. Output order follows the dataset for any jobs.
DecodeSummary RunDecode(const RunConfig& cfg);

struct EvalSummary {
  std::string report_json;
  std::size_t total = 0;
  std::size_t failed = 0;
  double hit1 = 0.0;
  double f1 = 0.0;
};

// Report to cfg.report_out (when set); sweep CSVs to cfg.sweep_omega and
// cfg.sweep_beam (when set).
EvalSummary RunEvalCommand(const RunConfig& cfg);

struct SynthSummary {
  std::size_t triples = 0;
  std::size_t questions = 0;
};

// Writes the generated triples to cfg.kg and the questions to cfg.dataset.
SynthSummary RunSynth(const RunConfig& cfg);

// {"vocab", "graphs": {name: triples_path}, "max_hops", "embedder", "plus"};
// all optional. Graph files are loaded eagerly.
SidecarOptions MakeSidecarOptions(const nlohmann::json& j);

}  // namespace kgd

#endif  // KGDECODE_CORE_RUN_H_
