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
#include <sstream>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/kg_store.h"
#include "doctest.h"
#include "oracles.h"
#include "test_util.h"

namespace kgd {
namespace {

TEST_CASE("ingest: empty stream gives an empty graph") {
  const KnowledgeGraph g = ParseTriples("");
  CHECK(g.entities().empty());
  CHECK(g.triples().empty());
}

TEST_CASE("ingest: one newspaper record") {
  const KnowledgeGraph g =
      ParseTriples("Akher Saa\tbook.newspaper.circulation_areas\tEgypt\n");
  CHECK(g.entities().size() == 2);
  CHECK(g.relations().size() == 1);
  CHECK(g.triples().size() == 1);
  CHECK(g.HasTriple({"Akher Saa", "book.newspaper.circulation_areas", "Egypt"}));
}

TEST_CASE("ingest: duplicates collapse to the line set") {
  const std::string text = test::ReadData("six_lines.tsv");
  std::set<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.insert(line);
  }
  const KnowledgeGraph g = ParseTriples(text);
  CHECK(g.triples().size() == lines.size());
  CHECK(g.triples().size() == 5);
}

TEST_CASE("ingest: malformed lines name their line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      ParseTriples(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("A\tr\tB\nB\tr\n") == 2);
  CHECK(line_of("A\tr\tB\nA\tr\tB\nC\t \tD\n") == 3);
  CHECK(line_of("A \xE2\x86\x92 B\tr\tC\n") == 1);
  CHECK(line_of("A\tr\tB\tC\n") == 1);
  CHECK(line_of("A\tr\t\xff\n") == 1);
  CHECK(line_of(test::ReadData("malformed_line3.tsv")) == 3);
}

TEST_CASE("ingest: whitespace around fields is trimmed") {
  const KnowledgeGraph g = ParseTriples("  A \t r \t B \r\n# c\n\n");
  CHECK(g.HasTriple({"A", "r", "B"}));
}

TEST_CASE("out index lists edges in (relation, tail) order") {
  const KnowledgeGraph g =
      ParseTriples("A\tz\tB\nA\ta\tC\nA\ta\tB\nB\tq\tA\n");
  const auto& edges = g.OutEdges("A");
  REQUIRE(edges.size() == 3);
  CHECK(edges[0] == KnowledgeGraph::Edge{"a", "B"});
  CHECK(edges[1] == KnowledgeGraph::Edge{"a", "C"});
  CHECK(edges[2] == KnowledgeGraph::Edge{"z", "B"});
  CHECK(g.OutEdges("C").empty());
  CHECK(g.OutEdges("nobody").empty());
}

TEST_CASE("extract_paths: topic without outgoing edges") {
  const KnowledgeGraph g = ParseTriples("A\tr\tB\n");
  CHECK(ExtractPaths(g, "B", 2).empty());
}

TEST_CASE("extract_paths: star graph has only one-hop paths") {
  const KnowledgeGraph g = ParseTriples("A\tr\tB\nA\tr\tC\n");
  const auto paths = ExtractPaths(g, "A", 2);
  REQUIRE(paths.size() == 2);
  CHECK(Textualize(paths[0]) == "A \xE2\x86\x92 r \xE2\x86\x92 B");
  CHECK(Textualize(paths[1]) == "A \xE2\x86\x92 r \xE2\x86\x92 C");
}

TEST_CASE("extract_paths: chain") {
  const KnowledgeGraph g = ParseTriples("A\tr1\tB\nB\tr2\tC\n");
  const auto paths = ExtractPaths(g, "A", 2);
  REQUIRE(paths.size() == 2);
  CHECK(Textualize(paths[0]) == "A \xE2\x86\x92 r1 \xE2\x86\x92 B");
  CHECK(Textualize(paths[1]) ==
        "A \xE2\x86\x92 r1 \xE2\x86\x92 B \xE2\x86\x92 r2 \xE2\x86\x92 C");
}

TEST_CASE("extract_paths: no step straight back to the previous entity") {
  const KnowledgeGraph g = ParseTriples("A\tr\tB\nB\ts\tA\nB\tt\tC\n");
  for (const Path& p : ExtractPaths(g, "A", 2)) {
    CHECK(!(p.hop_count() == 2 && p.end() == "A"));
  }
  CHECK(ExtractPaths(g, "A", 2).size() == 2);
}

TEST_CASE("extract_paths: unknown topic carries the label") {
  const KnowledgeGraph g = ParseTriples("A\tr\tB\n");
  try {
    ExtractPaths(g, "Zed", 2);
    FAIL("expected LookupError");
  } catch (const LookupError& e) {
    CHECK(e.label() == "Zed");
    CHECK(e.code() == ErrorCode::kLookup);
  }
  CHECK_THROWS_AS(ExtractPaths(g, "A", 0), Error);
}

TEST_CASE("extract_paths matches the exhaustive oracle on small graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const int m = static_cast<int>(rng() % 25);
    std::vector<oracle::Edge> edges;
    std::vector<Triple> triples;
    for (int i = 0; i < m; ++i) {
      const std::string h = "e" + std::to_string(rng() % n);
      const std::string r = "r" + std::to_string(rng() % 3);
      const std::string t = "e" + std::to_string(rng() % n);
      edges.push_back({h, r, t});
      triples.push_back({h, r, t});
    }
    triples.push_back({"e0", "r0", "e0"});
    edges.push_back({"e0", "r0", "e0"});
    const KnowledgeGraph g = KnowledgeGraph::FromTriples(triples);
    const int hops = 1 + static_cast<int>(rng() % 3);
    for (const std::string& topic : g.entities()) {
      const auto expect = oracle::EnumeratePaths(edges, topic, hops);
      const auto paths = ExtractPaths(g, topic, hops);
      std::set<std::vector<std::string>> got;
      for (const Path& p : paths) {
        CHECK(IsValidPath(g, p));
        CHECK(p.hop_count() >= 1);
        CHECK(p.hop_count() <= static_cast<std::size_t>(hops));
        got.insert(SplitPathText(Textualize(p)));
      }
      CHECK(got.size() == paths.size());  // duplicate free
      CHECK(got == expect);
      // Stable across calls, ordered by hops then text.
      CHECK(ExtractPaths(g, topic, hops) == paths);
      for (std::size_t i = 1; i < paths.size(); ++i) {
        const auto a = std::make_pair(paths[i - 1].hop_count(), Textualize(paths[i - 1]));
        const auto b = std::make_pair(paths[i].hop_count(), Textualize(paths[i]));
        CHECK(a < b);
      }
    }
  }
}

TEST_CASE("textualize") {
  CHECK(Textualize(Path{"E", {}}) == "E");
  const Path p{"Help Me Make It Thru the Night",
               {{"music.composition.composer", "Joe Walsh"}}};
  CHECK(Textualize(p) ==
        "Help Me Make It Thru the Night \xE2\x86\x92 "
        "music.composition.composer \xE2\x86\x92 Joe Walsh");
  CHECK(FinalEntity(Textualize(p)) == "Joe Walsh");
}

TEST_CASE("textualize: split inverse and injectivity on random paths") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> alphabet = {"a", "b", " ", "c", ".",
                                             "d", "_", "E", "\xE2\x86\x92"};
  auto label = [&] {
    std::string s;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    return s;
  };
  std::set<std::string> texts;
  std::set<std::vector<std::string>> label_seqs;
  for (int i = 0; i < 1000; ++i) {
    Path p;
    do {
      p.start = label();
    } while (!CheckLabel(p.start).empty());
    const int hops = static_cast<int>(rng() % 4);
    for (int h = 0; h < hops; ++h) {
      std::string r, e;
      do { r = label(); } while (!CheckLabel(r).empty());
      do { e = label(); } while (!CheckLabel(e).empty());
      p.steps.push_back({r, e});
    }
    std::vector<std::string> labels{p.start};
    for (const auto& [r, e] : p.steps) {
      labels.push_back(r);
      labels.push_back(e);
    }
    const std::string text = Textualize(p);
    CHECK(SplitPathText(text) == labels);
    texts.insert(text);
    label_seqs.insert(labels);
  }
  CHECK(texts.size() == label_seqs.size());
}

TEST_CASE("WriteTriples round-trips") {
  const KnowledgeGraph g = ParseTriples(test::ReadData("fixture_kg.tsv"));
  std::ostringstream out;
  WriteTriples(g, out);
  const KnowledgeGraph h = ParseTriples(out.str());
  CHECK(h.triples() == g.triples());
}

}  // namespace
}  // namespace kgd
