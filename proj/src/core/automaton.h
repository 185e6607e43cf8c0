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

#ifndef KGDECODE_CORE_AUTOMATON_H_
#define KGDECODE_CORE_AUTOMATON_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/tokenizer.h"

namespace kgd {

using StateId = std::uint32_t;

struct AcceptedPath {
  TokenSequence tokens;
  std::string text;
};

// Token trie over the tokenizations of a set of legal path texts. Each state
// is a token prefix of some accepted path; a state is accepting iff its
// prefix is a complete path. EOS is allowed exactly at accepting states.
//
// Immutable after Compile; all queries are read-only.
class TokenAutomaton {
 public:
  TokenAutomaton() = default;

  // Duplicate texts are merged. Throws Error(kCompile) naming the offending
  // path when a text is empty or cannot be encoded.
  static TokenAutomaton Compile(const Tokenizer& tokenizer,
                                std::span<const std::string> paths);

  StateId root() const { return 0; }
  std::size_t num_states() const { return accepting_.size(); }
  std::size_t vocab_size() const { return vocab_size_; }
  TokenId eos() const { return eos_; }
  bool empty() const { return accepted_.empty(); }
  const std::vector<AcceptedPath>& accepted_paths() const { return accepted_; }
  // Longest accepted token sequence (EOS not counted).
  std::size_t max_path_tokens() const { return max_path_tokens_; }

  bool IsAccepting(StateId s) const;
  std::optional<std::size_t> PathIndex(StateId s) const;

  std::optional<StateId> TryStep(StateId s, TokenId t) const;
  // Throws Error(kDeadState) when `t` has no transition from `s`.
  StateId Step(StateId s, TokenId t) const;
  std::optional<StateId> Walk(std::span<const TokenId> tokens) const;
  bool Accepts(std::span<const TokenId> tokens) const;

  // Sorted token ids with a transition from `s`, plus EOS when accepting.
  std::vector<TokenId> AllowedTokens(StateId s) const;
  std::size_t AllowedCount(StateId s) const;
  // Dense form of AllowedTokens; entry i is 1 iff token i is allowed.
  std::vector<std::uint8_t> MaskVector(StateId s) const;
  bool IsAllowed(StateId s, TokenId t) const;

  // Transition edges of `s` sorted by token (EOS not included).
  std::span<const std::pair<TokenId, StateId>> Children(StateId s) const;

  // Binary snapshot: "KGDA" magic, format version, state table, child arrays
  // and the accepted-path table. Little-endian.
  void Save(std::ostream& out) const;
  static TokenAutomaton Load(std::istream& in);

 private:
  void CheckState(StateId s) const;

  std::size_t vocab_size_ = 0;
  TokenId eos_ = 1;
  std::vector<std::uint8_t> accepting_;
  std::vector<std::int32_t> path_index_;
  std::vector<std::uint32_t> child_begin_;  // size num_states + 1
  std::vector<std::pair<TokenId, StateId>> children_;
  std::vector<AcceptedPath> accepted_;
  std::size_t max_path_tokens_ = 0;
};

}  // namespace kgd

#endif  // KGDECODE_CORE_AUTOMATON_H_
