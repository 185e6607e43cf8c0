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

#ifndef KGDECODE_CORE_BEAM_DECODER_H_
#define KGDECODE_CORE_BEAM_DECODER_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/automaton.h"
#include "core/lm.h"
#include "core/logits.h"
#include "core/prompting.h"
#include "core/tokenizer.h"
#include "json.hpp"

namespace kgd {

struct DecodeConfig {
  std::size_t beam_size = 20;
  // 0 selects the longest compiled path length + 1 (room for EOS).
  std::size_t max_steps = 0;
  // When > 0, traces also carry a top-k logits record per expansion.
  std::size_t trace_logits_top_k = 0;
};

struct BeamState {
  TokenSequence generated;       // ends with EOS once finished
  std::optional<StateId> state;  // nullopt once off the automaton
  double log_score = 0.0;
  bool finished = false;
};

struct RankedPath {
  std::string text;
  double log_score = 0.0;
  TokenSequence tokens;  // without the trailing EOS
  bool legal = true;     // accepted by the automaton
};

struct DecodeResult {
  std::vector<RankedPath> ranked;  // log_score descending
  std::string answer;              // final entity of ranked[0]
};

struct EncodedPrompts {
  TokenSequence main;
  TokenSequence mask;
};

EncodedPrompts EncodePrompts(const Tokenizer& tokenizer,
                             const PromptPair& prompts);

using TraceSink = std::function<void(const nlohmann::ordered_json&)>;

// Constrained beam search. Each step expands every live hypothesis over the
// tokens with non-zero probability under the logits pipeline and keeps the
// global top beam_size by total log-probability (ties: lexicographically
// smaller token sequence first). Hypotheses that emit EOS are frozen and
// compete in the final ranking. No length normalization.
//
// Throws Error(kInvalidArgument) for an automaton that accepts nothing and
// Error(kExhausted) when no hypothesis finishes within max_steps.
DecodeResult BeamDecode(const LmProvider& lm, const Tokenizer& tokenizer,
                        const EncodedPrompts& prompts,
                        const TokenAutomaton& automaton,
                        const DecodeConfig& cfg, const PipelineConfig& pcfg,
                        const TraceSink& trace = nullptr);

DecodeResult BeamDecode(const LmProvider& lm, const Tokenizer& tokenizer,
                        const PromptPair& prompts,
                        const TokenAutomaton& automaton,
                        const DecodeConfig& cfg, const PipelineConfig& pcfg,
                        const TraceSink& trace = nullptr);

// Sum of log step probabilities of `tokens` (EOS included if present) under
// the logits pipeline, replayed step by step.
double ReplayLogScore(const LmProvider& lm, const EncodedPrompts& prompts,
                      const TokenAutomaton& automaton,
                      const PipelineConfig& pcfg,
                      std::span<const TokenId> tokens);

}  // namespace kgd

#endif  // KGDECODE_CORE_BEAM_DECODER_H_
