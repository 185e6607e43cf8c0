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

#include "core/tokenizer.h"

#include <algorithm>
#include <sstream>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

Vocabulary::Vocabulary(std::vector<std::string> pieces, ReservedIds reserved)
    : pieces_(std::move(pieces)), reserved_(reserved) {
  const auto n = static_cast<TokenId>(pieces_.size());
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty vocabulary");
  for (TokenId id : {reserved_.bos, reserved_.eos, reserved_.mask}) {
    if (id < 0 || id >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "reserved id " + std::to_string(id) + " out of range");
    }
  }
  if (reserved_.bos == reserved_.eos || reserved_.bos == reserved_.mask ||
      reserved_.eos == reserved_.mask) {
    throw Error(ErrorCode::kInvalidArgument, "reserved ids must be distinct");
  }
  index_.reserve(pieces_.size());
  for (TokenId id = 0; id < n; ++id) {
    const std::string& p = pieces_[static_cast<std::size_t>(id)];
    if (p.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty piece at id " + std::to_string(id));
    }
    if (!index_.emplace(p, id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate piece at id " + std::to_string(id));
    }
  }
}

const std::string& Vocabulary::piece(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= pieces_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "token id " + std::to_string(id) + " out of range");
  }
  return pieces_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> Vocabulary::Find(std::string_view piece) const {
  auto it = index_.find(std::string(piece));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

constexpr std::string_view kVocabMagic = "#kgd-vocab v1";

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string Unescape(std::string_view s, std::size_t line_no) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) throw ParseError(line_no, "dangling escape");
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'x': {
        if (i + 2 >= s.size()) {
          throw ParseError(line_no, "truncated \\x escape");
        }
        const int hi = HexValue(s[i + 1]);
        const int lo = HexValue(s[i + 2]);
        if (hi < 0 || lo < 0) throw ParseError(line_no, "bad \\x escape");
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        break;
      }
      default:
        throw ParseError(line_no, std::string("unknown escape \\") + s[i]);
    }
  }
  return out;
}

std::string Escape(std::string_view s) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else if (c == '\r') {
      out += "\\r";
    } else if (u < 0x20 || u == 0x7f) {
      out += "\\x";
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 15]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

Vocabulary ParseVocabulary(std::string_view data) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    lines.push_back(data.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty() || lines[0].substr(0, kVocabMagic.size()) != kVocabMagic) {
    throw ParseError(1, "missing '#kgd-vocab v1' header");
  }
  ReservedIds reserved;
  bool have[3] = {false, false, false};
  std::istringstream header(std::string(lines[0].substr(kVocabMagic.size())));
  std::string field;
  while (header >> field) {
    const std::size_t eq = field.find('=');
    if (eq == std::string::npos) throw ParseError(1, "bad header field " + field);
    const std::string key = field.substr(0, eq);
    TokenId value;
    try {
      value = std::stoi(field.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError(1, "bad header value " + field);
    }
    if (key == "bos") {
      reserved.bos = value;
      have[0] = true;
    } else if (key == "eos") {
      reserved.eos = value;
      have[1] = true;
    } else if (key == "mask") {
      reserved.mask = value;
      have[2] = true;
    } else {
      throw ParseError(1, "unknown header key " + key);
    }
  }
  if (!have[0] || !have[1] || !have[2]) {
    throw ParseError(1, "header must declare bos, eos and mask");
  }
  std::vector<std::string> pieces;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) throw ParseError(i + 1, "empty piece");
    pieces.push_back(Unescape(line, i + 1));
  }
  return Vocabulary(std::move(pieces), reserved);
}

Vocabulary LoadVocabularyFile(const std::string& path) {
  return ParseVocabulary(ReadFile(path));
}

std::string SerializeVocabulary(const Vocabulary& v) {
  std::string out(kVocabMagic);
  out += " bos=" + std::to_string(v.reserved().bos) +
         " eos=" + std::to_string(v.reserved().eos) +
         " mask=" + std::to_string(v.reserved().mask) + "\n";
  for (const std::string& p : v.pieces()) {
    out += Escape(p);
    out.push_back('\n');
  }
  return out;
}

GreedyTokenizer::GreedyTokenizer(std::shared_ptr<const Vocabulary> vocab)
    : vocab_(std::move(vocab)) {
  trie_.emplace_back();
  const ReservedIds r = vocab_->reserved();
  for (TokenId id = 0; id < static_cast<TokenId>(vocab_->size()); ++id) {
    if (id == r.bos || id == r.eos) continue;
    std::int32_t node = 0;
    for (char ch : vocab_->piece(id)) {
      const auto c = static_cast<unsigned char>(ch);
      auto& next = trie_[static_cast<std::size_t>(node)].next;
      auto it = std::lower_bound(
          next.begin(), next.end(), c,
          [](const auto& e, unsigned char key) { return e.first < key; });
      if (it != next.end() && it->first == c) {
        node = it->second;
      } else {
        const auto fresh = static_cast<std::int32_t>(trie_.size());
        next.insert(it, {c, fresh});
        trie_.emplace_back();
        node = fresh;
      }
    }
    trie_[static_cast<std::size_t>(node)].token = id;
  }
}

TokenSequence GreedyTokenizer::Encode(std::string_view text) const {
  TokenSequence out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::int32_t node = 0;
    TokenId best = -1;
    std::size_t best_len = 0;
    for (std::size_t i = pos; i < text.size(); ++i) {
      const auto c = static_cast<unsigned char>(text[i]);
      const auto& next = trie_[static_cast<std::size_t>(node)].next;
      auto it = std::lower_bound(
          next.begin(), next.end(), c,
          [](const auto& e, unsigned char key) { return e.first < key; });
      if (it == next.end() || it->first != c) break;
      node = it->second;
      if (trie_[static_cast<std::size_t>(node)].token >= 0) {
        best = trie_[static_cast<std::size_t>(node)].token;
        best_len = i - pos + 1;
      }
    }
    if (best < 0) throw EncodingError(pos, "no vocabulary piece matches");
    out.push_back(best);
    pos += best_len;
  }
  return out;
}

std::string GreedyTokenizer::Decode(std::span<const TokenId> ids,
                                    bool strip_special) const {
  const ReservedIds r = vocab_->reserved();
  std::string out;
  for (TokenId id : ids) {
    const std::string& p = vocab_->piece(id);
    if (strip_special && (id == r.bos || id == r.eos)) continue;
    out += p;
  }
  return out;
}

std::string_view GreedyTokenizer::Piece(TokenId id) const {
  return vocab_->piece(id);
}

std::optional<TokenId> GreedyTokenizer::PieceId(std::string_view piece) const {
  return vocab_->Find(piece);
}

std::shared_ptr<const GreedyTokenizer> ReferenceTokenizer() {
  static const auto tokenizer =
      std::make_shared<const GreedyTokenizer>(ReferenceVocabulary());
  return tokenizer;
}

}  // namespace kgd
