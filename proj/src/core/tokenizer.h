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

#ifndef KGDECODE_CORE_TOKENIZER_H_
#define KGDECODE_CORE_TOKENIZER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgd {

using TokenId = std::int32_t;
using TokenSequence = std::vector<TokenId>;

struct ReservedIds {
  TokenId bos = 0;
  TokenId eos = 1;
  TokenId mask = 2;
};

// Dense id -> piece table. IDs are 0..size()-1.
class Vocabulary {
 public:
  // Throws Error(kInvalidArgument) on empty/duplicate pieces or bad reserved
  // ids.
  Vocabulary(std::vector<std::string> pieces, ReservedIds reserved);

  std::size_t size() const { return pieces_.size(); }
  const ReservedIds& reserved() const { return reserved_; }
  const std::string& piece(TokenId id) const;
  const std::vector<std::string>& pieces() const { return pieces_; }
  std::optional<TokenId> Find(std::string_view piece) const;

 private:
  std::vector<std::string> pieces_;
  ReservedIds reserved_;
  std::unordered_map<std::string, TokenId> index_;
};

// Vocabulary file: a header record
//   #kgd-vocab v1 bos=<id> eos=<id> mask=<id>
// followed by one piece per line; the n-th piece line holds token ID n.
// Pieces use the escapes \\ \n \t \r and \xHH.
Vocabulary ParseVocabulary(std::string_view data);
Vocabulary LoadVocabularyFile(const std::string& path);
std::string SerializeVocabulary(const Vocabulary& v);

// The built-in vocabulary: reserved tokens, the path delimiter, every
// printable ASCII byte, and a table of word pieces. Covers any text made of
// printable ASCII, tab, newline, and U+2192.
std::shared_ptr<const Vocabulary> ReferenceVocabulary();

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  virtual std::size_t size() const = 0;
  virtual ReservedIds reserved() const = 0;
  virtual TokenSequence Encode(std::string_view text) const = 0;
  // Out-of-range ids throw Error(kInvalidArgument). With `strip_special`,
  // BOS and EOS contribute nothing.
  virtual std::string Decode(std::span<const TokenId> ids,
                             bool strip_special = false) const = 0;
  virtual std::string_view Piece(TokenId id) const = 0;
  // Token for a single piece, if the vocabulary has one (e.g. "\n").
  virtual std::optional<TokenId> PieceId(std::string_view piece) const = 0;
};

// Greedy longest-match over the piece table. BOS and EOS never match text;
// every other piece (MASK included) does. Unmatchable input throws
// EncodingError naming the byte offset.
class GreedyTokenizer : public Tokenizer {
 public:
  explicit GreedyTokenizer(std::shared_ptr<const Vocabulary> vocab);

  std::size_t size() const override { return vocab_->size(); }
  ReservedIds reserved() const override { return vocab_->reserved(); }
  TokenSequence Encode(std::string_view text) const override;
  std::string Decode(std::span<const TokenId> ids,
                     bool strip_special = false) const override;
  std::string_view Piece(TokenId id) const override;
  std::optional<TokenId> PieceId(std::string_view piece) const override;

  const Vocabulary& vocabulary() const { return *vocab_; }

 private:
  struct Node {
    std::vector<std::pair<unsigned char, std::int32_t>> next;  // sorted
    TokenId token = -1;
  };

  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<Node> trie_;
};

std::shared_ptr<const GreedyTokenizer> ReferenceTokenizer();

}  // namespace kgd

#endif  // KGDECODE_CORE_TOKENIZER_H_
