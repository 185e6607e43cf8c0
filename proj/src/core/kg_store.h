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

#ifndef KGDECODE_CORE_KG_STORE_H_
#define KGDECODE_CORE_KG_STORE_H_

#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgd {

// Separator between path elements in textualized paths: space, U+2192, space.
inline constexpr std::string_view kPathDelimiter = " \xE2\x86\x92 ";

struct Triple {
  std::string head;
  std::string relation;
  std::string tail;

  auto operator<=>(const Triple&) const = default;
};

// Labels are compared byte-wise. A valid label is non-empty, trimmed, has no
// tab, newline or delimiter, and neither ends with " \u2192" nor starts with
// "\u2192 " (either would make the joined text ambiguous). Returns an empty
// string when valid, otherwise a description of the violation.
std::string CheckLabel(std::string_view label);

struct Path {
  std::string start;
  std::vector<std::pair<std::string, std::string>> steps;  // (relation, entity)

  std::size_t hop_count() const { return steps.size(); }
  // Final entity of the path (the start entity for a 0-hop path).
  const std::string& end() const {
    return steps.empty() ? start : steps.back().second;
  }

  auto operator<=>(const Path&) const = default;
};

// Immutable after construction; safe to share across readers.
class KnowledgeGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // (relation, tail)

  KnowledgeGraph() = default;
  // Deduplicates `triples`. Throws Error(kInvalidArgument) on invalid labels.
  static KnowledgeGraph FromTriples(std::vector<Triple> triples);

  const std::set<std::string>& entities() const { return entities_; }
  const std::set<std::string>& relations() const { return relations_; }
  // Sorted and duplicate-free.
  const std::vector<Triple>& triples() const { return triples_; }

  bool HasEntity(std::string_view label) const;
  bool HasTriple(const Triple& t) const;
  // Outgoing edges of `head` in (relation, tail) order; empty if none.
  const std::vector<Edge>& OutEdges(std::string_view head) const;

 private:
  std::set<std::string, std::less<>> entity_lookup_;
  std::set<std::string> entities_;
  std::set<std::string> relations_;
  std::vector<Triple> triples_;
  std::map<std::string, std::vector<Edge>, std::less<>> out_index_;
};

// Parses `head<TAB>relation<TAB>tail` records. Blank lines and lines whose
// first non-blank character is '#' are skipped. Throws ParseError.
KnowledgeGraph ParseTriples(std::string_view data);
KnowledgeGraph ParseTriples(std::istream& in);
KnowledgeGraph LoadTriplesFile(const std::string& path);

// One triple per line, sorted.
void WriteTriples(const KnowledgeGraph& g, std::ostream& out);

// Every traversal of 1..max_hops hops from `topic`. A step never returns to
// the entity it just came from. Ordered by hop count, then textualization.
// Throws LookupError for an unknown topic.
std::vector<Path> ExtractPaths(const KnowledgeGraph& g, std::string_view topic,
                               int max_hops = 2);

bool IsValidPath(const KnowledgeGraph& g, const Path& p);

std::string Textualize(const Path& p);
// Inverse of Textualize at the label level.
std::vector<std::string> SplitPathText(std::string_view text);
// Last element of a textualized path.
std::string FinalEntity(std::string_view text);

}  // namespace kgd

#endif  // KGDECODE_CORE_KG_STORE_H_
