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

#include "core/synth.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "core/embedding.h"
#include "core/error.h"
#include "core/path_scoring.h"
#include "core/word_lists.h"

namespace kgd {

namespace {

// Modulo with rejection, so the stream is identical on every standard
// library (uniform_int_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t Below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  std::size_t Between(std::size_t lo, std::size_t hi) {
    return lo + Below(hi - lo + 1);
  }

 private:
  std::mt19937_64 gen_;
};

// A name not in `taken` or `used`; recorded in `used`.
std::string FreshName(Rng& rng, const std::set<std::string>& taken,
                      std::set<std::string>& used) {
  const auto words = EntityWords();
  auto fresh = [&](const std::string& name) {
    return !taken.count(name) && used.insert(name).second;
  };
  for (;;) {
    std::string name = std::string(words[rng.Below(words.size())]) + " " +
                       std::string(words[rng.Below(words.size())]);
    if (fresh(name)) return name;
    name += " " + std::string(words[rng.Below(words.size())]);
    if (fresh(name)) return name;
  }
}

std::string QuestionText(const std::vector<std::string>& relations,
                         const std::string& topic) {
  std::string q = "What is the " + RelationWords(relations.back());
  for (std::size_t i = relations.size() - 1; i-- > 0;) {
    q += " of the " + RelationWords(relations[i]);
  }
  return q + " of " + topic + "?";
}

}  // namespace

std::string RelationWords(std::string_view relation) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dot = relation.find('.', pos);
    parts.push_back(relation.substr(pos, dot - pos));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  std::string out;
  for (std::size_t i = parts.size() >= 2 ? parts.size() - 2 : 0;
       i < parts.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    for (char c : parts[i]) out.push_back(c == '_' ? ' ' : c);
  }
  return out;
}

std::vector<std::string> RelationSequence(std::string_view path_text) {
  const std::vector<std::string> parts = SplitPathText(path_text);
  std::vector<std::string> rels;
  for (std::size_t i = 1; i < parts.size(); i += 2) rels.push_back(parts[i]);
  return rels;
}

SynthSuite GenerateSynthSuite(const SynthOptions& o) {
  if (o.min_entities < 3 || o.max_entities < o.min_entities ||
      o.max_out_degree < 2 || o.max_hops < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad synthetic suite options");
  }
  Rng rng(o.seed);
  const HashingEmbedder embedder;
  const auto relations = RelationLabels();
  std::set<std::string> used_names;
  SynthSuite suite;
  std::size_t attempts = 0;
  while (suite.questions.size() < o.num_questions) {
    if (++attempts > 100 * (o.num_questions + 1)) {
      throw Error(ErrorCode::kInternal, "synthetic generator did not converge");
    }
    const std::size_t n = rng.Between(o.min_entities, o.max_entities);
    std::vector<std::string> names;
    std::set<std::string> local_names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(FreshName(rng, used_names, local_names));
    }
    std::vector<Triple> triples;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t degree = i == 0 ? rng.Between(2, o.max_out_degree)
                                        : rng.Between(0, o.max_out_degree);
      for (std::size_t d = 0; d < degree; ++d) {
        std::size_t tail = rng.Below(n - 1);
        if (tail >= i) ++tail;
        triples.push_back({names[i],
                           std::string(relations[rng.Below(relations.size())]),
                           names[tail]});
      }
    }
    const KnowledgeGraph g = KnowledgeGraph::FromTriples(triples);
    const std::string& topic = names[0];
    std::vector<std::string> texts;
    for (const Path& p : ExtractPaths(g, topic, o.max_hops)) {
      texts.push_back(Textualize(p));
    }
    if (texts.empty()) continue;
    const std::string& gold_text = texts[rng.Below(texts.size())];
    const std::vector<std::string> gold_rels = RelationSequence(gold_text);
    const std::string question = QuestionText(gold_rels, topic);
    const ScoredPathSet scored = ScorePaths(embedder, question, texts);
    if (RelationSequence(scored.entries[scored.top1].text) != gold_rels) {
      continue;
    }
    QuestionInstance q;
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%04zu", suite.questions.size() + 1);
    q.id = id;
    q.question = question;
    q.topic_entities = {topic};
    std::set<std::string> answers;
    for (const std::string& t : texts) {
      if (RelationSequence(t) == gold_rels) answers.insert(FinalEntity(t));
    }
    q.answers.assign(answers.begin(), answers.end());
    suite.questions.push_back(std::move(q));
    used_names.insert(names.begin(), names.end());
    for (const Triple& t : g.triples()) suite.triples.push_back(t);
  }
  std::sort(suite.triples.begin(), suite.triples.end());
  return suite;
}

}  // namespace kgd
