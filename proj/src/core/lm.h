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

#ifndef KGDECODE_CORE_LM_H_
#define KGDECODE_CORE_LM_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/logits.h"
#include "core/tokenizer.h"

namespace kgd {

// Next-token logits for a (prompt, generated suffix) pair over the shared
// vocabulary. Implementations must be deterministic in their inputs and
// return finite vectors of length vocab_size().
class LmProvider {
 public:
  virtual ~LmProvider() = default;

  virtual std::size_t vocab_size() const = 0;
  virtual LogitsVector Logits(std::span<const TokenId> prompt,
                              std::span<const TokenId> generated) const = 0;

  // Both prompt branches for one hypothesis; providers may batch. The
  // results carry the raw-main and raw-mask stage tags.
  virtual std::pair<LogitsVector, LogitsVector> BranchLogits(
      std::span<const TokenId> main_prompt,
      std::span<const TokenId> mask_prompt,
      std::span<const TokenId> generated) const;

  // False if calls must be serialized by the caller.
  virtual bool concurrent() const { return true; }
};

// Parameters of the toy LM.
//
//   logit(t) = copy_weight * ln(count(t) + smoothing)
//            + bigram_noise * u(seed, last, t)
//            + branch_noise * u(seed ^ hash(prompt), last, t)
//            + distractor_bias * [t is a distractor]
//
// count(t) is the number of prompt lines that start with the generated
// tokens and continue with t (for EOS: that end exactly there), i.e. the
// model copies lines from its prompt. u() is a hash mapped to [0, 1) and
// `last` is the previous token (BOS at the first step). After a distractor
// token, EOS receives twice distractor_bias.
struct ToyLmSpec {
  std::uint64_t seed = 7;
  double copy_weight = 1.0;
  double smoothing = 0.01;
  double bigram_noise = 1.0;
  double branch_noise = 0.1;
  std::vector<TokenId> distractors;
  double distractor_bias = 0.0;

  // Default parameters, calibrated against the synthetic suite.
  static ToyLmSpec Calibrated(std::uint64_t seed = 7);
  // Strongly prefers the given distractor tokens and stopping right after
  // them; produces illegal paths unless filtered.
  static ToyLmSpec Adversarial(const Tokenizer& tokenizer,
                               std::uint64_t seed = 7);
};

class ToyLm : public LmProvider {
 public:
  ToyLm(std::shared_ptr<const Tokenizer> tokenizer, ToyLmSpec spec);

  std::size_t vocab_size() const override { return vocab_size_; }
  LogitsVector Logits(std::span<const TokenId> prompt,
                      std::span<const TokenId> generated) const override;

  const ToyLmSpec& spec() const { return spec_; }

 private:
  struct LineTrie {
    struct Node {
      std::vector<std::pair<TokenId, std::uint32_t>> next;  // sorted
      std::uint32_t through = 0;  // lines passing through this node
      std::uint32_t ending = 0;   // lines ending exactly here
    };
    std::vector<Node> nodes;
  };

  std::shared_ptr<const LineTrie> LinesOf(std::span<const TokenId> prompt,
                                          std::uint64_t hash) const;

  std::shared_ptr<const Tokenizer> tokenizer_;
  ToyLmSpec spec_;
  std::size_t vocab_size_;
  TokenId newline_ = -1;
  std::vector<std::uint8_t> is_distractor_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t,
                             std::pair<TokenSequence,
                                       std::shared_ptr<const LineTrie>>>
      cache_;
};

std::uint64_t HashTokens(std::span<const TokenId> tokens);

}  // namespace kgd

#endif  // KGDECODE_CORE_LM_H_
