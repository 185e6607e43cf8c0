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

#include "core/lm.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

std::pair<LogitsVector, LogitsVector> LmProvider::BranchLogits(
    std::span<const TokenId> main_prompt, std::span<const TokenId> mask_prompt,
    std::span<const TokenId> generated) const {
  LogitsVector main = Logits(main_prompt, generated);
  LogitsVector mask = Logits(mask_prompt, generated);
  main.stage = LogitsStage::kRawMain;
  mask.stage = LogitsStage::kRawMask;
  return {std::move(main), std::move(mask)};
}

std::uint64_t HashTokens(std::span<const TokenId> tokens) {
  std::uint64_t h = 1469598103934665603ull;
  for (TokenId t : tokens) {
    h = SplitMix64(h ^ static_cast<std::uint32_t>(t));
  }
  return h;
}

ToyLmSpec ToyLmSpec::Calibrated(std::uint64_t seed) {
  ToyLmSpec spec;
  spec.seed = seed;
  return spec;
}

ToyLmSpec ToyLmSpec::Adversarial(const Tokenizer& tokenizer,
                                 std::uint64_t seed) {
  ToyLmSpec spec = Calibrated(seed);
  for (std::string_view piece : {"art", " award"}) {
    if (auto id = tokenizer.PieceId(piece)) spec.distractors.push_back(*id);
  }
  if (spec.distractors.empty()) {
    // Fall back to the last token of the vocabulary.
    spec.distractors.push_back(static_cast<TokenId>(tokenizer.size() - 1));
  }
  spec.distractor_bias = 30.0;
  return spec;
}

ToyLm::ToyLm(std::shared_ptr<const Tokenizer> tokenizer, ToyLmSpec spec)
    : tokenizer_(std::move(tokenizer)),
      spec_(std::move(spec)),
      vocab_size_(tokenizer_->size()),
      is_distractor_(vocab_size_, 0) {
  if (!(spec_.smoothing > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "toy LM smoothing must be > 0");
  }
  if (auto nl = tokenizer_->PieceId("\n")) newline_ = *nl;
  for (TokenId t : spec_.distractors) {
    if (t < 0 || static_cast<std::size_t>(t) >= vocab_size_) {
      throw Error(ErrorCode::kInvalidArgument, "distractor id out of range");
    }
    is_distractor_[static_cast<std::size_t>(t)] = 1;
  }
}

std::shared_ptr<const ToyLm::LineTrie> ToyLm::LinesOf(
    std::span<const TokenId> prompt, std::uint64_t hash) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(hash);
    if (it != cache_.end() &&
        std::equal(prompt.begin(), prompt.end(), it->second.first.begin(),
                   it->second.first.end())) {
      return it->second.second;
    }
  }
  auto trie = std::make_shared<LineTrie>();
  trie->nodes.emplace_back();
  std::size_t start = 0;
  for (std::size_t i = 0; i <= prompt.size(); ++i) {
    if (i < prompt.size() && prompt[i] != newline_) continue;
    if (i > start) {
      std::uint32_t node = 0;
      trie->nodes[0].through++;
      for (std::size_t k = start; k < i; ++k) {
        auto& next = trie->nodes[node].next;
        auto it = std::lower_bound(
            next.begin(), next.end(), prompt[k],
            [](const auto& e, TokenId key) { return e.first < key; });
        if (it == next.end() || it->first != prompt[k]) {
          const auto fresh = static_cast<std::uint32_t>(trie->nodes.size());
          it = next.insert(it, {prompt[k], fresh});
          trie->nodes.emplace_back();
        }
        node = it->second;
        trie->nodes[node].through++;
      }
      trie->nodes[node].ending++;
    }
    start = i + 1;
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (cache_.size() > 4096) cache_.clear();
  cache_[hash] = {TokenSequence(prompt.begin(), prompt.end()), trie};
  return trie;
}

LogitsVector ToyLm::Logits(std::span<const TokenId> prompt,
                           std::span<const TokenId> generated) const {
  const std::uint64_t prompt_hash = HashTokens(prompt);
  const auto lines = LinesOf(prompt, prompt_hash);
  const ReservedIds reserved = tokenizer_->reserved();

  const double base = spec_.copy_weight * std::log(spec_.smoothing);
  LogitsVector out{std::vector<double>(vocab_size_, base),
                   LogitsStage::kRawMain};

  // Walk the generated suffix through the line trie.
  std::int64_t node = 0;
  for (TokenId t : generated) {
    const auto& next = lines->nodes[static_cast<std::size_t>(node)].next;
    auto it = std::lower_bound(
        next.begin(), next.end(), t,
        [](const auto& e, TokenId key) { return e.first < key; });
    if (it == next.end() || it->first != t) {
      node = -1;
      break;
    }
    node = it->second;
  }
  if (node >= 0) {
    const auto& here = lines->nodes[static_cast<std::size_t>(node)];
    for (const auto& [t, child] : here.next) {
      const double count = lines->nodes[child].through;
      out.values[static_cast<std::size_t>(t)] =
          spec_.copy_weight * std::log(count + spec_.smoothing);
    }
    if (here.ending > 0) {
      out.values[static_cast<std::size_t>(reserved.eos)] =
          spec_.copy_weight * std::log(here.ending + spec_.smoothing);
    }
  }

  const TokenId last = generated.empty() ? reserved.bos : generated.back();
  const std::uint64_t bigram_key =
      SplitMix64(spec_.seed ^ (static_cast<std::uint64_t>(
                                  static_cast<std::uint32_t>(last))
                              << 20));
  const std::uint64_t branch_key = SplitMix64(bigram_key ^ prompt_hash);
  for (std::size_t t = 0; t < vocab_size_; ++t) {
    double v = out.values[t];
    if (spec_.bigram_noise != 0.0) {
      v += spec_.bigram_noise * UnitInterval(SplitMix64(bigram_key + t));
    }
    if (spec_.branch_noise != 0.0) {
      v += spec_.branch_noise * UnitInterval(SplitMix64(branch_key + t));
    }
    if (is_distractor_[t]) v += spec_.distractor_bias;
    out.values[t] = v;
  }
  if (!generated.empty() && last >= 0 &&
      static_cast<std::size_t>(last) < vocab_size_ &&
      is_distractor_[static_cast<std::size_t>(last)]) {
    out.values[static_cast<std::size_t>(reserved.eos)] +=
        2.0 * spec_.distractor_bias;
  }
  return out;
}

}  // namespace kgd
