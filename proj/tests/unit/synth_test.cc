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

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/embedding.h"
#include "core/error.h"
#include "core/kg_store.h"
#include "core/path_scoring.h"
#include "core/synth.h"
#include "doctest.h"
#include "oracles.h"
#include "test_util.h"

namespace kgd {
namespace {

using test::CodeOf;

// "a.b.c_d" -> "b c d"; independent of the library helper.
std::string Words(const std::string& rel) {
  std::vector<std::string> parts;
  std::stringstream ss(rel);
  for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
  std::string out;
  for (std::size_t i = parts.size() < 2 ? 0 : parts.size() - 2; i < parts.size(); ++i) {
    std::string w = parts[i];
    for (char& c : w) if (c == '_') c = ' ';
    out += (out.empty() ? "" : " ") + w;
  }
  return out;
}

std::string Question(const std::vector<std::string>& labels) {
  std::vector<std::string> rels;
  for (std::size_t i = 1; i < labels.size(); i += 2) rels.push_back(labels[i]);
  std::string q = "What is the " + Words(rels.back());
  for (std::size_t i = rels.size() - 1; i-- > 0;) q += " of the " + Words(rels[i]);
  return q + " of " + labels[0] + "?";
}

TEST_CASE("relation words") {
  CHECK(RelationWords("people.person.place_of_birth") ==
        "person place of birth");
  CHECK(RelationWords("location.country.currency_used") ==
        "country currency used");
  CHECK(RelationWords("genre") == "genre");
  CHECK(RelationWords("a.b") == "a b");
  CHECK(RelationSequence("A \xE2\x86\x92 r1 \xE2\x86\x92 B \xE2\x86\x92 r2 "
                         "\xE2\x86\x92 C") ==
        std::vector<std::string>{"r1", "r2"});
}

TEST_CASE("suite generation is deterministic in the seed") {
  SynthOptions o;
  o.num_questions = 30;
  const auto a = GenerateSynthSuite(o);
  const auto b = GenerateSynthSuite(o);
  CHECK(a.triples == b.triples);
  REQUIRE(a.questions.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(a.questions[i].question == b.questions[i].question);
    CHECK(a.questions[i].answers == b.questions[i].answers);
  }
  o.seed = 2;
  CHECK(GenerateSynthSuite(o).triples != a.triples);
}

TEST_CASE("default suite: structure checked against oracles") {
  const auto suite = GenerateSynthSuite({});
  REQUIRE(suite.questions.size() == 200);
  CHECK(std::is_sorted(suite.triples.begin(), suite.triples.end()));
  const KnowledgeGraph g = KnowledgeGraph::FromTriples(suite.triples);
  CHECK(g.triples().size() == suite.triples.size());

  std::vector<oracle::Edge> edges;
  for (const auto& t : suite.triples) edges.push_back({t.head, t.relation, t.tail});

  // Union-find over entities: each question owns one component.
  std::map<std::string, std::string> parent;
  auto find = [&](std::string x) {
    while (parent.count(x) && parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& e : edges) {
    parent.emplace(e.head, e.head);
    parent.emplace(e.tail, e.tail);
    parent[find(e.head)] = find(e.tail);
  }
  std::set<std::string> roots;
  std::set<std::string> ids;
  const HashingEmbedder embedder;
  for (const auto& q : suite.questions) {
    CAPTURE(q.id);
    CHECK(ids.insert(q.id).second);
    CHECK(q.id.rfind("synth-", 0) == 0);
    REQUIRE(q.topic_entities.size() == 1);
    const std::string& topic = q.topic_entities[0];
    CHECK(roots.insert(find(topic)).second);

    const auto paths = oracle::EnumeratePaths(edges, topic, 2);
    REQUIRE(!paths.empty());
    std::set<std::string> answers;
    std::vector<std::string> texts;
    for (const auto& p : paths) {
      texts.push_back(oracle::Join(p));
      if (Question(p) == q.question) answers.insert(p.back());
    }
    CHECK(std::vector<std::string>(answers.begin(), answers.end()) == q.answers);
    // The reference embedder ranks a gold-shaped path first.
    const auto scored = ScorePaths(embedder, q.question, texts);
    CHECK(Question(SplitPathText(scored.entries[0].text)) == q.question);
    CHECK(texts[oracle::CosineArgmax(q.question, texts)] == scored.entries[0].text);
  }
  CHECK(roots.size() == 200);
}

TEST_CASE("suite survives a write and parse round trip") {
  SynthOptions o;
  o.num_questions = 10;
  const auto suite = GenerateSynthSuite(o);
  std::stringstream out;
  WriteTriples(KnowledgeGraph::FromTriples(suite.triples), out);
  CHECK(ParseTriples(out.str()).triples() == suite.triples);
  const auto back = ParseDataset(SerializeDataset(suite.questions));
  REQUIRE(back.size() == 10);
  CHECK(back[3].answers == suite.questions[3].answers);
}

TEST_CASE("bad options are rejected") {
  SynthOptions o;
  o.min_entities = 2;
  CHECK(CodeOf([&] { GenerateSynthSuite(o); }) == ErrorCode::kInvalidArgument);
  o = {};
  o.max_entities = 4;
  CHECK(CodeOf([&] { GenerateSynthSuite(o); }) == ErrorCode::kInvalidArgument);
  o = {};
  o.max_out_degree = 1;
  CHECK(CodeOf([&] { GenerateSynthSuite(o); }) == ErrorCode::kInvalidArgument);
  o = {};
  o.max_hops = 0;
  CHECK(CodeOf([&] { GenerateSynthSuite(o); }) == ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace kgd
