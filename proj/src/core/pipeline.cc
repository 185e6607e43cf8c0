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

#include "core/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "core/error.h"

namespace kgd {

std::vector<std::string> CollectPathTexts(const KnowledgeGraph& kg,
                                          const QuestionInstance& q,
                                          int max_hops) {
  std::vector<std::string> texts;
  std::unordered_set<std::string> seen;
  for (const std::string& topic : q.topic_entities) {
    for (const Path& p : ExtractPaths(kg, topic, max_hops)) {
      std::string text = Textualize(p);
      if (seen.insert(text).second) texts.push_back(std::move(text));
    }
  }
  return texts;
}

CompiledQuestion CompileQuestion(std::vector<std::string> path_texts,
                                 const std::string& question,
                                 const Tokenizer& tokenizer,
                                 const EmbeddingProvider& embedder,
                                 const PlusPolicy& plus) {
  CompiledQuestion c;
  c.scored = ScorePaths(embedder, question, path_texts, plus);
  c.automaton = TokenAutomaton::Compile(tokenizer, path_texts);
  c.path_texts = std::move(path_texts);
  return c;
}

Engine::Engine(std::shared_ptr<const KnowledgeGraph> kg,
               std::shared_ptr<const Tokenizer> tokenizer,
               std::shared_ptr<const EmbeddingProvider> embedder,
               std::shared_ptr<const LmProvider> lm, PromptTemplate tmpl,
               EngineOptions options)
    : kg_(std::move(kg)),
      tokenizer_(std::move(tokenizer)),
      embedder_(std::move(embedder)),
      lm_(std::move(lm)),
      template_(std::move(tmpl)),
      options_(std::move(options)) {}

Engine Engine::WithOptions(EngineOptions options) const {
  Engine copy = *this;
  copy.options_ = std::move(options);
  return copy;
}

QuestionOutcome Engine::Run(const QuestionInstance& q,
                            const TraceSink& trace) const {
  QuestionOutcome out;
  out.id = q.id;
  try {
    CompiledQuestion c =
        CompileQuestion(CollectPathTexts(*kg_, q, options_.max_hops),
                        q.question, *tokenizer_, *embedder_, options_.plus);
    out.num_paths = c.path_texts.size();
    out.top1_path = c.scored.entries.at(c.scored.top1).text;
    const PromptPair prompts =
        BuildPrompts(template_, q, c.scored, options_.mask_form);
    out.result = BeamDecode(*lm_, *tokenizer_, prompts, c.automaton,
                            options_.decode, options_.pipeline, trace);
    out.automaton = std::move(c.automaton);
    out.ok = true;
  } catch (const Error& e) {
    out.error_code = ErrorCodeName(e.code());
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error_code = ErrorCodeName(ErrorCode::kInternal);
    out.error = e.what();
  }
  return out;
}

void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> workers;
  const std::size_t count = std::min(jobs, n);
  workers.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kgd
