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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/tokenizer.h"
#include "doctest.h"
#include "oracles.h"
#include "test_util.h"

namespace kgd {
namespace {

const std::vector<std::string> kFixturePieces = {
    "J", "o", "e", " ", "W", "a", "l", "s", "h", "Jo", "Joe", " W", " Wal",
    "sh", "alsh", "Wa"};

std::set<int> Skip(const Tokenizer& t) {
  return {t.reserved().bos, t.reserved().eos};
}

TEST_CASE("encode: empty text") {
  CHECK(ReferenceTokenizer()->Encode("").empty());
  CHECK(test::SmallTokenizer(kFixturePieces)->Encode("").empty());
}

TEST_CASE("encode: Joe Walsh against the greedy oracle") {
  const auto tok = test::SmallTokenizer(kFixturePieces);
  const auto& pieces = tok->vocabulary().pieces();
  const auto expect = oracle::GreedyEncode(pieces, Skip(*tok), "Joe Walsh");
  REQUIRE(expect.has_value());
  const TokenSequence got = tok->Encode("Joe Walsh");
  CHECK(std::vector<int>(got.begin(), got.end()) == *expect);
  REQUIRE(got.size() == 3);
  CHECK(tok->Piece(got[0]) == "Joe");
  CHECK(tok->Piece(got[1]) == " Wal");
  CHECK(tok->Piece(got[2]) == "sh");
}

TEST_CASE("encode: reference tokenizer agrees with the oracle") {
  const auto tok = ReferenceTokenizer();
  const auto& pieces = tok->vocabulary().pieces();
  for (const char* text :
       {"Joe Walsh", "Help Me Make It Thru the Night \xE2\x86\x92 "
                     "music.composition.composer \xE2\x86\x92 Joe Walsh",
        "Akher Saa \xE2\x86\x92 book.newspaper.circulation_areas \xE2\x86\x92 "
        "Egypt",
        "Question: What is the person nationality of Oak Ridge?\n",
        "[MASK]\n\t~"}) {
    const auto expect = oracle::GreedyEncode(pieces, Skip(*tok), text);
    REQUIRE(expect.has_value());
    const TokenSequence got = tok->Encode(text);
    CHECK(std::vector<int>(got.begin(), got.end()) == *expect);
    CHECK(tok->Decode(got) == text);
  }
}

TEST_CASE("encode/decode round-trip on random ASCII") {
  const auto tok = ReferenceTokenizer();
  const auto& pieces = tok->vocabulary().pieces();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k) {
      const int r = static_cast<int>(rng() % 100);
      s.push_back(r < 2 ? '\n' : r < 4 ? '\t' : static_cast<char>(32 + rng() % 95));
    }
    const TokenSequence ids = tok->Encode(s);
    CHECK(tok->Decode(ids) == s);
    if (i < 200) {
      const auto expect = oracle::GreedyEncode(pieces, Skip(*tok), s);
      CHECK(std::vector<int>(ids.begin(), ids.end()) == *expect);
    }
  }
}

TEST_CASE("encode: unsupported byte reports its offset") {
  const auto tok = test::SmallTokenizer(kFixturePieces);
  try {
    tok->Encode("Joe Wz");
    FAIL("expected EncodingError");
  } catch (const EncodingError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(ReferenceTokenizer()->Encode("caf\xC3\xA9"), EncodingError);
}

TEST_CASE("encode: BOS and EOS never match, MASK does") {
  const auto tok = ReferenceTokenizer();
  const TokenSequence ids = tok->Encode("[MASK]");
  REQUIRE(ids.size() == 1);
  CHECK(ids[0] == tok->reserved().mask);
  for (TokenId id : tok->Encode("<s></s>")) {
    CHECK(id != tok->reserved().bos);
    CHECK(id != tok->reserved().eos);
  }
}

TEST_CASE("decode") {
  const auto tok = ReferenceTokenizer();
  CHECK(tok->Decode({}) == "");
  const TokenId bos = tok->reserved().bos;
  const TokenId eos = tok->reserved().eos;
  CHECK(tok->Decode(std::vector<TokenId>{bos}, true) == "");
  CHECK(tok->Decode(std::vector<TokenId>{bos}, false) == "<s>");
  TokenSequence ids = tok->Encode("Egypt");
  ids.insert(ids.begin(), bos);
  ids.push_back(eos);
  CHECK(tok->Decode(ids, true) == "Egypt");
  CHECK_THROWS_AS(tok->Decode(std::vector<TokenId>{-1}), Error);
  CHECK_THROWS_AS(
      tok->Decode(std::vector<TokenId>{static_cast<TokenId>(tok->size())}),
      Error);
}

TEST_CASE("encode is deterministic") {
  const auto a = ReferenceTokenizer()->Encode("Joe Walsh \xE2\x86\x92 x");
  const auto fresh = std::make_shared<const GreedyTokenizer>(ReferenceVocabulary());
  CHECK(fresh->Encode("Joe Walsh \xE2\x86\x92 x") == a);
}

TEST_CASE("vocabulary invariants") {
  CHECK_THROWS_AS(Vocabulary({}, {}), Error);
  CHECK_THROWS_AS(Vocabulary({"a", "b"}, {0, 1, 2}), Error);
  CHECK_THROWS_AS(Vocabulary({"a", "b", "c"}, {0, 0, 2}), Error);
  CHECK_THROWS_AS(Vocabulary({"a", "", "c"}, {0, 1, 2}), Error);
  CHECK_THROWS_AS(Vocabulary({"a", "b", "a"}, {0, 1, 2}), Error);
  const Vocabulary v({"x", "y", "z", "w"}, {3, 2, 1});
  CHECK(v.size() == 4);
  CHECK(v.Find("w") == 3);
  CHECK(!v.Find("q").has_value());
}

TEST_CASE("vocabulary file round-trip") {
  const auto& ref = *ReferenceVocabulary();
  const std::string text = SerializeVocabulary(ref);
  const Vocabulary back = ParseVocabulary(text);
  CHECK(back.pieces() == ref.pieces());
  CHECK(back.reserved().bos == ref.reserved().bos);
  CHECK(back.reserved().eos == ref.reserved().eos);
  CHECK(back.reserved().mask == ref.reserved().mask);
  // The shipped copy is the serialized built-in vocabulary.
  CHECK(test::ReadPath(std::string(KGD_SOURCE_DIR) +
                       "/data/reference_vocab.txt") == text);
}

TEST_CASE("vocabulary file escapes and errors") {
  const Vocabulary v = ParseVocabulary(
      "#kgd-vocab v1 bos=0 eos=1 mask=2\n<s>\n</s>\n[M]\n\\n\n\\t\n\\\\\n\\x7f\n");
  CHECK(v.piece(3) == "\n");
  CHECK(v.piece(4) == "\t");
  CHECK(v.piece(5) == "\\");
  CHECK(v.piece(6) == "\x7f");
  CHECK_THROWS_AS(ParseVocabulary("<s>\n</s>\n"), ParseError);
  CHECK_THROWS_AS(ParseVocabulary("#kgd-vocab v1 bos=0 eos=1\na\nb\nc\n"),
                  ParseError);
  try {
    ParseVocabulary("#kgd-vocab v1 bos=0 eos=1 mask=2\na\nb\n\\q\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(ParseVocabulary("#kgd-vocab v1 bos=0 eos=1 mask=2\na\nb\nc\\x4\n"),
                  ParseError);
  CHECK_THROWS_AS(ParseVocabulary("#kgd-vocab v1 bos=0 eos=1 mask=2\na\n\nc\n"),
                  ParseError);
}

}  // namespace
}  // namespace kgd
