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

#include "core/automaton.h"

#include <algorithm>
#include <cstring>
#include <map>
#include <unordered_set>

#include "core/error.h"

namespace kgd {

namespace {

constexpr char kMagic[4] = {'K', 'G', 'D', 'A'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void Put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorCode::kParse, "truncated automaton snapshot");
  return value;
}

}  // namespace

TokenAutomaton TokenAutomaton::Compile(const Tokenizer& tokenizer,
                                       std::span<const std::string> paths) {
  TokenAutomaton a;
  a.vocab_size_ = tokenizer.size();
  a.eos_ = tokenizer.reserved().eos;

  std::vector<std::map<TokenId, StateId>> edges(1);
  std::vector<std::int32_t> path_index(1, -1);
  std::unordered_set<std::string> seen;
  for (const std::string& text : paths) {
    if (!seen.insert(text).second) continue;
    if (text.empty()) throw Error(ErrorCode::kCompile, "empty path text");
    TokenSequence tokens;
    try {
      tokens = tokenizer.Encode(text);
    } catch (const Error& e) {
      throw Error(ErrorCode::kCompile,
                  "cannot encode path '" + text + "': " + e.what());
    }
    StateId s = 0;
    for (TokenId t : tokens) {
      auto [it, inserted] =
          edges[s].emplace(t, static_cast<StateId>(edges.size()));
      if (inserted) {
        edges.emplace_back();
        path_index.push_back(-1);
      }
      s = it->second;
    }
    path_index[s] = static_cast<std::int32_t>(a.accepted_.size());
    a.max_path_tokens_ = std::max(a.max_path_tokens_, tokens.size());
    a.accepted_.push_back({std::move(tokens), text});
  }

  a.accepting_.resize(edges.size());
  a.child_begin_.reserve(edges.size() + 1);
  for (std::size_t s = 0; s < edges.size(); ++s) {
    a.accepting_[s] = path_index[s] >= 0 ? 1 : 0;
    a.child_begin_.push_back(static_cast<std::uint32_t>(a.children_.size()));
    for (const auto& edge : edges[s]) a.children_.push_back(edge);
  }
  a.child_begin_.push_back(static_cast<std::uint32_t>(a.children_.size()));
  a.path_index_ = std::move(path_index);
  return a;
}

void TokenAutomaton::CheckState(StateId s) const {
  if (s >= num_states()) {
    throw Error(ErrorCode::kInvalidArgument,
                "state " + std::to_string(s) + " out of range");
  }
}

bool TokenAutomaton::IsAccepting(StateId s) const {
  CheckState(s);
  return accepting_[s] != 0;
}

std::optional<std::size_t> TokenAutomaton::PathIndex(StateId s) const {
  CheckState(s);
  if (path_index_[s] < 0) return std::nullopt;
  return static_cast<std::size_t>(path_index_[s]);
}

std::span<const std::pair<TokenId, StateId>> TokenAutomaton::Children(
    StateId s) const {
  CheckState(s);
  return std::span<const std::pair<TokenId, StateId>>(
      children_.data() + child_begin_[s], child_begin_[s + 1] - child_begin_[s]);
}

std::optional<StateId> TokenAutomaton::TryStep(StateId s, TokenId t) const {
  auto kids = Children(s);
  auto it = std::lower_bound(
      kids.begin(), kids.end(), t,
      [](const auto& e, TokenId key) { return e.first < key; });
  if (it == kids.end() || it->first != t) return std::nullopt;
  return it->second;
}

StateId TokenAutomaton::Step(StateId s, TokenId t) const {
  if (auto next = TryStep(s, t)) return *next;
  throw Error(ErrorCode::kDeadState, "token " + std::to_string(t) +
                                         " has no transition from state " +
                                         std::to_string(s));
}

std::optional<StateId> TokenAutomaton::Walk(
    std::span<const TokenId> tokens) const {
  StateId s = root();
  for (TokenId t : tokens) {
    auto next = TryStep(s, t);
    if (!next) return std::nullopt;
    s = *next;
  }
  return s;
}

bool TokenAutomaton::Accepts(std::span<const TokenId> tokens) const {
  if (num_states() == 0) return false;
  auto s = Walk(tokens);
  return s && IsAccepting(*s);
}

std::vector<TokenId> TokenAutomaton::AllowedTokens(StateId s) const {
  std::vector<TokenId> out;
  for (const auto& edge : Children(s)) out.push_back(edge.first);
  if (IsAccepting(s)) {
    out.insert(std::lower_bound(out.begin(), out.end(), eos_), eos_);
  }
  return out;
}

std::size_t TokenAutomaton::AllowedCount(StateId s) const {
  return Children(s).size() + (IsAccepting(s) ? 1 : 0);
}

bool TokenAutomaton::IsAllowed(StateId s, TokenId t) const {
  if (t == eos_) return IsAccepting(s);
  return TryStep(s, t).has_value();
}

std::vector<std::uint8_t> TokenAutomaton::MaskVector(StateId s) const {
  std::vector<std::uint8_t> mask(vocab_size_, 0);
  for (const auto& edge : Children(s)) {
    mask[static_cast<std::size_t>(edge.first)] = 1;
  }
  if (IsAccepting(s)) mask[static_cast<std::size_t>(eos_)] = 1;
  return mask;
}

void TokenAutomaton::Save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  Put<std::uint32_t>(out, kFormatVersion);
  Put<std::uint64_t>(out, vocab_size_);
  Put<std::int32_t>(out, eos_);
  Put<std::uint64_t>(out, num_states());
  for (std::size_t s = 0; s < num_states(); ++s) {
    Put<std::uint8_t>(out, accepting_[s]);
    Put<std::int32_t>(out, path_index_[s]);
    Put<std::uint32_t>(out, child_begin_[s + 1] - child_begin_[s]);
    for (std::uint32_t i = child_begin_[s]; i < child_begin_[s + 1]; ++i) {
      Put<std::int32_t>(out, children_[i].first);
      Put<std::uint32_t>(out, children_[i].second);
    }
  }
  Put<std::uint64_t>(out, accepted_.size());
  for (const AcceptedPath& p : accepted_) {
    Put<std::uint64_t>(out, p.tokens.size());
    for (TokenId t : p.tokens) Put<std::int32_t>(out, t);
    Put<std::uint64_t>(out, p.text.size());
    out.write(p.text.data(), static_cast<std::streamsize>(p.text.size()));
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing automaton snapshot");
}

TokenAutomaton TokenAutomaton::Load(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kParse, "not an automaton snapshot");
  }
  if (const auto v = Get<std::uint32_t>(in); v != kFormatVersion) {
    throw Error(ErrorCode::kParse,
                "unsupported snapshot version " + std::to_string(v));
  }
  TokenAutomaton a;
  a.vocab_size_ = Get<std::uint64_t>(in);
  a.eos_ = Get<std::int32_t>(in);
  const auto n = Get<std::uint64_t>(in);
  if (n == 0) throw Error(ErrorCode::kParse, "snapshot has no states");
  a.accepting_.reserve(n);
  a.path_index_.reserve(n);
  a.child_begin_.reserve(n + 1);
  for (std::uint64_t s = 0; s < n; ++s) {
    a.accepting_.push_back(Get<std::uint8_t>(in));
    a.path_index_.push_back(Get<std::int32_t>(in));
    a.child_begin_.push_back(static_cast<std::uint32_t>(a.children_.size()));
    const auto k = Get<std::uint32_t>(in);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto t = Get<std::int32_t>(in);
      const auto child = Get<std::uint32_t>(in);
      if (child >= n || t < 0 ||
          static_cast<std::uint64_t>(t) >= a.vocab_size_) {
        throw Error(ErrorCode::kParse, "corrupt transition in snapshot");
      }
      a.children_.emplace_back(t, child);
    }
  }
  a.child_begin_.push_back(static_cast<std::uint32_t>(a.children_.size()));
  const auto paths = Get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < paths; ++i) {
    AcceptedPath p;
    const auto len = Get<std::uint64_t>(in);
    for (std::uint64_t k = 0; k < len; ++k) {
      p.tokens.push_back(Get<std::int32_t>(in));
    }
    const auto text_len = Get<std::uint64_t>(in);
    p.text.resize(text_len);
    in.read(p.text.data(), static_cast<std::streamsize>(text_len));
    if (!in) throw Error(ErrorCode::kParse, "truncated automaton snapshot");
    a.max_path_tokens_ = std::max(a.max_path_tokens_, p.tokens.size());
    a.accepted_.push_back(std::move(p));
  }
  return a;
}

}  // namespace kgd
