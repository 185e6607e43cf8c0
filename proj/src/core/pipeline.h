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

#ifndef KGDECODE_CORE_PIPELINE_H_
#define KGDECODE_CORE_PIPELINE_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/automaton.h"
#include "core/beam_decoder.h"
#include "core/embedding.h"
#include "core/kg_store.h"
#include "core/lm.h"
#include "core/path_scoring.h"
#include "core/prompting.h"
#include "core/question.h"
#include "core/tokenizer.h"

namespace kgd {

struct EngineOptions {
  int max_hops = 2;
  PlusPolicy plus;
  std::optional<std::string> mask_form = std::string(kDefaultMaskForm);
  DecodeConfig decode;
  PipelineConfig pipeline;
};

// Everything needed to answer one question: the automaton over the legal
// paths and their question similarity scores.
struct CompiledQuestion {
  std::vector<std::string> path_texts;
  TokenAutomaton automaton;
  ScoredPathSet scored;
};

// Legal paths of every topic entity (union, first occurrence order).
// Throws LookupError for an unknown topic.
std::vector<std::string> CollectPathTexts(const KnowledgeGraph& kg,
                                          const QuestionInstance& q,
                                          int max_hops);

CompiledQuestion CompileQuestion(std::vector<std::string> path_texts,
                                 const std::string& question,
                                 const Tokenizer& tokenizer,
                                 const EmbeddingProvider& embedder,
                                 const PlusPolicy& plus);

struct QuestionOutcome {
  std::string id;
  bool ok = false;
  std::string error_code;
  std::string error;
  std::size_t num_paths = 0;
  std::string top1_path;
  DecodeResult result;
  std::optional<TokenAutomaton> automaton;
};

// Shared, read-only collaborators of a batch run.
class Engine {
 public:
  Engine(std::shared_ptr<const KnowledgeGraph> kg,
         std::shared_ptr<const Tokenizer> tokenizer,
         std::shared_ptr<const EmbeddingProvider> embedder,
         std::shared_ptr<const LmProvider> lm, PromptTemplate tmpl,
         EngineOptions options);

  const KnowledgeGraph& kg() const { return *kg_; }
  const Tokenizer& tokenizer() const { return *tokenizer_; }
  const EmbeddingProvider& embedder() const { return *embedder_; }
  const LmProvider& lm() const { return *lm_; }
  const PromptTemplate& prompt_template() const { return template_; }
  const EngineOptions& options() const { return options_; }

  // compile -> score -> prompt -> beam decode. Errors are captured in the
  // outcome rather than thrown.
  QuestionOutcome Run(const QuestionInstance& q,
                      const TraceSink& trace = nullptr) const;

  // Copy with different decoding knobs (for sweeps and ablations).
  Engine WithOptions(EngineOptions options) const;

 private:
  std::shared_ptr<const KnowledgeGraph> kg_;
  std::shared_ptr<const Tokenizer> tokenizer_;
  std::shared_ptr<const EmbeddingProvider> embedder_;
  std::shared_ptr<const LmProvider> lm_;
  PromptTemplate template_;
  EngineOptions options_;
};

// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace kgd

#endif  // KGDECODE_CORE_PIPELINE_H_
