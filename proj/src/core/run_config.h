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

#ifndef KGDECODE_CORE_RUN_CONFIG_H_
#define KGDECODE_CORE_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "core/eval.h"
#include "core/logits.h"
#include "core/path_scoring.h"
#include "core/synth.h"
#include "json.hpp"

namespace kgd {

struct LmConfig {
  std::string kind = "toy";  // toy | adversarial
  std::uint64_t seed = 7;
  double copy_weight = 1.0;
  double smoothing = 0.01;
  double bigram_noise = 1.0;
  double branch_noise = 0.1;
  double distractor_bias = 30.0;  // adversarial only
};

struct EmbedderConfig {
  std::string kind = "reference";  // reference | http
  std::size_t dimension = 256;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string path = "/embed";
  int timeout_ms = 5000;
  int max_attempts = 3;
};

// Everything a batch run needs. Serialized as one JSON object whose keys
// mirror the CLI long flags with '-' written as '_'; nested objects for the
// LM, embedder, plus-set policy and synthetic suite.
struct RunConfig {
  // inputs and outputs
  std::string kg;
  std::string dataset;
  std::string out;
  std::string vocab;     // empty: built-in reference vocabulary
  std::string template_path;  // key "template"; empty: built-in template
  std::string trace_out;
  std::string report_out;
  std::string sweep_omega;  // CSV path; empty: no sweep
  std::string sweep_beam;

  // decoding
  double omega = 2.0;
  CombineSpace space = CombineSpace::kLogit;
  std::size_t beam = 20;
  std::size_t max_steps = 0;
  int max_hops = 2;
  bool strengthen = true;
  bool filter = true;
  std::optional<std::string> mask_form = std::string(kDefaultMaskForm);
  PlusPolicy plus;
  std::size_t trace_logits_top_k = 0;

  LmConfig lm;
  EmbedderConfig embedder;

  // evaluation
  MatchMode match = MatchMode::kCaseFold;
  EvalOptions::F1Set f1_set = EvalOptions::F1Set::kAll;
  std::size_t jobs = 1;

  SynthOptions synth;

  nlohmann::ordered_json ToJson() const;
  // Missing keys keep their defaults. Unknown keys and ill-typed values
  // throw Error(kConfig).
  static RunConfig FromJson(const nlohmann::json& j);

  bool operator==(const RunConfig& other) const;
};

// Recursive object merge; keys in `overlay` win. Non-object values replace.
nlohmann::json MergeConfig(nlohmann::json base, const nlohmann::json& overlay);

// `file_text` (may be empty) overlaid with `overrides`, then validated.
RunConfig ResolveConfig(const std::string& file_text,
                        const nlohmann::json& overrides);

}  // namespace kgd

#endif  // KGDECODE_CORE_RUN_CONFIG_H_
