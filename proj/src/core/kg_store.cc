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

#include "core/kg_store.h"

#include <algorithm>
#include <sstream>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

std::string CheckLabel(std::string_view label) {
  if (Trim(label).empty()) return "empty label";
  if (label.find('\t') != std::string_view::npos) return "label contains a tab";
  if (label.find('\n') != std::string_view::npos) {
    return "label contains a newline";
  }
  if (label.find(kPathDelimiter) != std::string_view::npos) {
    return "label contains the path delimiter";
  }
  if (Trim(label).size() != label.size()) {
    return "label has leading or trailing whitespace";
  }
  // These would join with a neighbouring delimiter into a second one.
  constexpr std::string_view kArrow = "\xE2\x86\x92";
  if (label.ends_with(std::string(" ") + std::string(kArrow)) ||
      label.starts_with(std::string(kArrow) + " ")) {
    return "label begins or ends with a bare arrow";
  }
  return {};
}

KnowledgeGraph KnowledgeGraph::FromTriples(std::vector<Triple> triples) {
  KnowledgeGraph g;
  for (const Triple& t : triples) {
    for (const std::string* label : {&t.head, &t.relation, &t.tail}) {
      if (std::string err = CheckLabel(*label); !err.empty()) {
        throw Error(ErrorCode::kInvalidArgument, err + ": '" + *label + "'");
      }
    }
  }
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  for (const Triple& t : triples) {
    g.entities_.insert(t.head);
    g.entities_.insert(t.tail);
    g.relations_.insert(t.relation);
    // Sorted triples keep each head's edges in (relation, tail) order.
    g.out_index_[t.head].emplace_back(t.relation, t.tail);
  }
  g.entity_lookup_.insert(g.entities_.begin(), g.entities_.end());
  g.triples_ = std::move(triples);
  return g;
}

bool KnowledgeGraph::HasEntity(std::string_view label) const {
  return entity_lookup_.find(label) != entity_lookup_.end();
}

bool KnowledgeGraph::HasTriple(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

const std::vector<KnowledgeGraph::Edge>& KnowledgeGraph::OutEdges(
    std::string_view head) const {
  static const std::vector<Edge> kEmpty;
  auto it = out_index_.find(head);
  return it == out_index_.end() ? kEmpty : it->second;
}

KnowledgeGraph ParseTriples(std::string_view data) {
  std::vector<Triple> triples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    std::string_view line = data.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (std::size_t bad = FindInvalidUtf8(line); bad != std::string_view::npos) {
      throw ParseError(line_no, "invalid UTF-8 at column " +
                                    std::to_string(bad + 1));
    }
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, found " +
                                    std::to_string(fields.size()));
    }
    Triple t{std::string(Trim(fields[0])), std::string(Trim(fields[1])),
             std::string(Trim(fields[2]))};
    static constexpr const char* kNames[] = {"head", "relation", "tail"};
    const std::string* labels[] = {&t.head, &t.relation, &t.tail};
    for (int i = 0; i < 3; ++i) {
      if (std::string err = CheckLabel(*labels[i]); !err.empty()) {
        throw ParseError(line_no, std::string(kNames[i]) + ": " + err);
      }
    }
    triples.push_back(std::move(t));
  }
  return KnowledgeGraph::FromTriples(std::move(triples));
}

KnowledgeGraph ParseTriples(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseTriples(std::string_view(ss.str()));
}

KnowledgeGraph LoadTriplesFile(const std::string& path) {
  return ParseTriples(std::string_view(ReadFile(path)));
}

void WriteTriples(const KnowledgeGraph& g, std::ostream& out) {
  for (const Triple& t : g.triples()) {
    out << t.head << '\t' << t.relation << '\t' << t.tail << '\n';
  }
}

namespace {

void Walk(const KnowledgeGraph& g, int max_hops, const std::string* previous,
          Path& current, std::vector<Path>& out) {
  if (static_cast<int>(current.hop_count()) == max_hops) return;
  const std::string& here = current.end();
  for (const auto& [relation, tail] : g.OutEdges(here)) {
    if (previous != nullptr && tail == *previous) continue;
    current.steps.emplace_back(relation, tail);
    out.push_back(current);
    Walk(g, max_hops, &here, current, out);
    current.steps.pop_back();
  }
}

}  // namespace

std::vector<Path> ExtractPaths(const KnowledgeGraph& g, std::string_view topic,
                               int max_hops) {
  if (!g.HasEntity(topic)) throw LookupError(std::string(topic));
  if (max_hops < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_hops must be >= 1");
  }
  Path root{std::string(topic), {}};
  std::vector<Path> out;
  Walk(g, max_hops, nullptr, root, out);

  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    keys.emplace_back(Textualize(out[i]), i);
  }
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    const std::size_t ha = out[a.second].hop_count();
    const std::size_t hb = out[b.second].hop_count();
    if (ha != hb) return ha < hb;
    return a.first < b.first;
  });
  std::vector<Path> sorted;
  sorted.reserve(out.size());
  for (const auto& k : keys) sorted.push_back(std::move(out[k.second]));
  return sorted;
}

bool IsValidPath(const KnowledgeGraph& g, const Path& p) {
  if (!g.HasEntity(p.start)) return false;
  const std::string* head = &p.start;
  for (const auto& [relation, tail] : p.steps) {
    if (!g.HasTriple(Triple{*head, relation, tail})) return false;
    head = &tail;
  }
  return true;
}

std::string Textualize(const Path& p) {
  std::string out = p.start;
  for (const auto& [relation, entity] : p.steps) {
    out.append(kPathDelimiter);
    out.append(relation);
    out.append(kPathDelimiter);
    out.append(entity);
  }
  return out;
}

std::vector<std::string> SplitPathText(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = text.find(kPathDelimiter, start);
    if (at == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      return parts;
    }
    parts.emplace_back(text.substr(start, at - start));
    start = at + kPathDelimiter.size();
  }
}

std::string FinalEntity(std::string_view text) {
  std::size_t at = text.rfind(kPathDelimiter);
  if (at == std::string_view::npos) return std::string(text);
  return std::string(text.substr(at + kPathDelimiter.size()));
}

}  // namespace kgd
