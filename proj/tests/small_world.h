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


// Small random decoding worlds shared by the decoder tests and the
// acceptance run: a hash-based LM and exhaustive scoring of a language.

#ifndef KGDECODE_TESTS_SMALL_WORLD_H_
#define KGDECODE_TESTS_SMALL_WORLD_H_

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/beam_decoder.h"
#include "core/lm.h"
#include "core/logits.h"
#include "core/tokenizer.h"
#include "oracles.h"
#include "test_util.h"

namespace test {

using kgd::CombineSpace;
using kgd::EncodedPrompts;
using kgd::LmProvider;
using kgd::LogitsStage;
using kgd::LogitsVector;
using kgd::PipelineConfig;
using kgd::TokenId;
using kgd::TokenSequence;
using oracle::Seq;

inline std::uint64_t Mix(std::uint64_t x) {
  x ^= x >> 31;
  x *= 0x7fb5d329728ea185ull;
  x ^= x >> 27;
  x *= 0x81dadef4bc2dd44dull;
  x ^= x >> 33;
  return x;
}

// Logits are a hash of (prompt, generated, token) mapped to [-3, 3).
class HashLm : public LmProvider {
 public:
  HashLm(std::size_t vocab, std::uint64_t seed) : vocab_(vocab), seed_(seed) {}
  std::size_t vocab_size() const override { return vocab_; }
  LogitsVector Logits(std::span<const TokenId> prompt,
                      std::span<const TokenId> generated) const override {
    ++calls_;
    std::uint64_t h = seed_;
    for (TokenId t : prompt) h = Mix(h + static_cast<std::uint64_t>(t) + 1);
    h = Mix(h ^ 0xabcdefull);
    for (TokenId t : generated) h = Mix(h + static_cast<std::uint64_t>(t) + 1);
    LogitsVector out{std::vector<double>(vocab_), LogitsStage::kRawMain};
    for (std::size_t t = 0; t < vocab_; ++t) {
      out.values[t] =
          static_cast<double>(Mix(h + t) >> 11) * 0x1.0p-53 * 6.0 - 3.0;
    }
    return out;
  }
  mutable std::size_t calls_ = 0;

 private:
  std::size_t vocab_;
  std::uint64_t seed_;
};

struct Ranked {
  Seq seq;
  double score;
};

// Every accepted sequence scored by the scalar oracle, best first.
inline std::vector<Ranked> Exhaustive(const LmProvider& lm, const EncodedPrompts& ep,
                               const std::set<Seq>& lang, int eos,
                               const PipelineConfig& cfg) {
  std::vector<Ranked> out;
  for (const Seq& s : lang) {
    Seq with_eos = s;
    with_eos.push_back(eos);
    double total = 0;
    for (std::size_t i = 0; i < with_eos.size(); ++i) {
      const TokenSequence gen(with_eos.begin(), with_eos.begin() + static_cast<long>(i));
      const auto main = lm.Logits(ep.main, gen).values;
      const auto mask = lm.Logits(ep.mask, gen).values;
      const Seq prefix(with_eos.begin(), with_eos.begin() + static_cast<long>(i));
      const auto allowed = oracle::AllowedAfter(lang, prefix, eos);
      std::vector<double> lp;
      if (cfg.space == CombineSpace::kProbability) {
        const auto z = oracle::ScalarProbabilityStrengthen(main, mask, cfg.omega);
        lp = oracle::ScalarStepLogProbs(z, z, 1.0, allowed, false, cfg.filter);
      } else {
        lp = oracle::ScalarStepLogProbs(main, mask, cfg.omega, allowed,
                                        cfg.strengthen, cfg.filter);
      }
      total += lp[static_cast<std::size_t>(with_eos[i])];
    }
    out.push_back({s, total});
  }
  std::sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.seq < b.seq;
  });
  return out;
}

class SmallWorld {
 public:
  SmallWorld()
      : tok_(test::SmallTokenizer({"a", "b", "c", "d", "e", "f", "g"})) {}

  std::vector<std::string> RandomPaths(std::mt19937_64& rng) const {
    std::set<std::string> out;
    const std::size_t n = 1 + rng() % 8;
    while (out.size() < n) {
      std::string s;
      const std::size_t len = 1 + rng() % 5;
      for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng() % 7));
      out.insert(s);
    }
    return {out.begin(), out.end()};
  }

  EncodedPrompts RandomPrompts(std::mt19937_64& rng) const {
    EncodedPrompts ep;
    for (int i = 0; i < 12; ++i) ep.main.push_back(static_cast<TokenId>(3 + rng() % 7));
    ep.mask = ep.main;
    ep.mask[rng() % ep.mask.size()] = tok_->reserved().mask;
    return ep;
  }

  std::shared_ptr<const kgd::GreedyTokenizer> tok_;
};

}  // namespace test

#endif  // KGDECODE_TESTS_SMALL_WORLD_H_
