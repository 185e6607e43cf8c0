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

#ifndef KGDECODE_CORE_LOGITS_H_
#define KGDECODE_CORE_LOGITS_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "core/automaton.h"
#include "core/tokenizer.h"
#include "json.hpp"

namespace kgd {

// Stand-in for -infinity on disallowed entries. Finite so that arithmetic
// never produces NaN; Softmax maps it to exactly zero.
inline constexpr double kDisallowed = std::numeric_limits<double>::lowest();

enum class LogitsStage { kRawMain, kRawMask, kStrengthened, kFiltered };

const char* LogitsStageName(LogitsStage stage);

struct LogitsVector {
  std::vector<double> values;
  LogitsStage stage = LogitsStage::kRawMain;
};

enum class CombineSpace { kLogit, kProbability };

struct PipelineConfig {
  double omega = 2.0;
  CombineSpace space = CombineSpace::kLogit;
  bool strengthen = true;  // ablation switch for the contrast stage
  bool filter = true;      // ablation switch for automaton masking
};

// Logit space:       out = omega * main + (1 - omega) * mask.
// Probability space: out = log(omega * softmax(main) + (1 - omega) *
//                    softmax(mask)), with non-positive mass clamped to the
//                    smallest normal double before the log.
// Throws Error(kShape) on length mismatch, Error(kNumeric) on non-finite
// input or omega.
LogitsVector Strengthen(const LogitsVector& main, const LogitsVector& mask,
                        double omega,
                        CombineSpace space = CombineSpace::kLogit);

// Keeps entries allowed at `state` and sets the rest to kDisallowed.
// Throws Error(kDeadEnd) if nothing is allowed.
LogitsVector Filter(const LogitsVector& z, const TokenAutomaton& automaton,
                    StateId state);

// Max-subtracted softmax; kDisallowed entries get probability 0.
std::vector<double> Softmax(std::span<const double> z);
// log of Softmax; kDisallowed entries get -infinity.
std::vector<double> LogSoftmax(std::span<const double> z);

// Raw branch logits -> sampling distribution: softmax(filter(strengthen)).
// Honors the ablation switches in `cfg`. `automaton` may be null only when
// filtering is disabled.
std::vector<double> StepDistribution(const LogitsVector& main,
                                     const LogitsVector& mask,
                                     const PipelineConfig& cfg,
                                     const TokenAutomaton* automaton,
                                     StateId state);
// Same composition, returning the final (pre-softmax) logits.
LogitsVector StepLogits(const LogitsVector& main, const LogitsVector& mask,
                        const PipelineConfig& cfg,
                        const TokenAutomaton* automaton, StateId state);

// Debug record {step, prefix, top_k: [{id, piece, raw_main, raw_mask,
// strengthened, filtered}]}, ranked by the filtered value. kDisallowed is
// written as null.
nlohmann::ordered_json LogitsDebugRecord(
    std::size_t step, const std::string& prefix, const Tokenizer& tokenizer,
    const LogitsVector& main, const LogitsVector& mask,
    const LogitsVector& strengthened, const LogitsVector& filtered,
    std::size_t k);

}  // namespace kgd

#endif  // KGDECODE_CORE_LOGITS_H_
