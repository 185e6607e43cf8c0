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

#include "core/word_lists.h"

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "core/kg_store.h"
#include "core/tokenizer.h"

namespace kgd {

namespace {

constexpr std::string_view kEntityWords[] = {
    "Alder",   "Amber",   "Ash",     "Bay",     "Birch",   "Bridge",
    "Brook",   "Castle",  "Cedar",   "Cliff",   "Copper",  "Cross",
    "Crown",   "Dale",    "Dover",   "Elm",     "Falcon",  "Fern",
    "Field",   "Ford",    "Garnet",  "Gate",    "Glen",    "Grove",
    "Harbor",  "Haven",   "Hazel",   "Hill",    "Hurst",   "Iris",
    "Ivory",   "Jasper",  "Juniper", "Kestrel", "Lake",    "Laurel",
    "Linden",  "Maple",   "Marsh",   "Meadow",  "Mill",    "Moor",
    "North",   "Oak",     "Orchid",  "Park",    "Pearl",   "Pine",
    "Port",    "Quarry",  "Quill",   "Raven",   "Ridge",   "Rose",
    "Sage",    "Shore",   "Silver",  "Stone",   "Thorn",   "Tulip",
    "Umber",   "Upton",   "Vale",    "Violet",  "Willow",  "Wood",
    "Wren",    "York",
};

constexpr std::string_view kRelations[] = {
    "people.person.nationality",
    "people.person.place_of_birth",
    "people.person.profession",
    "film.film.director",
    "film.film.starring",
    "film.director.film",
    "music.composition.composer",
    "music.guitarist.guitars_played",
    "music.artist.genre",
    "music.album.artist",
    "book.author.works_written",
    "book.newspaper.circulation_areas",
    "location.location.contains",
    "location.country.capital",
    "location.country.currency_used",
    "location.country.languages_spoken",
    "sports.sports_team.sport",
    "sports.sports_team.arena",
    "organization.organization.founders",
    "education.educational_institution.city",
    "government.government_office.holder",
    "tv.tv_program.creator",
    "common.topic.notable_types",
    "type.type.properties",
};

constexpr std::string_view kExtra[] = {
    "What", " What", "Who", " Who", "Which", " which", " is", " the", " of",
    " a", " and", " to", " in", " was", " by", " for", " with", " from",
    " used", " did", " does", "?", "Question", "Topic", " entities",
    "Paths", "Answer", " path", " paths", "You", " are", " reasoning",
    " assistant", " knowledge", " graph", " Using", " only", " listed",
    " below", " output", " single", " that", " answers", " question",
    " with", " relations", " joined", " copied", " exactly", " one", " per",
    " line", "Help", " Me", " Make", " It", " Thru", " Night", "Joe",
    " Walsh", "Akher", " Saa", "Egypt", "Egyptian", " pound", "Sudanese",
    " Pound", "Fender", " Stratocaster", "Composition", "Lyricist", "art",
    " art", "award", " award", "properties", "kind", " kind", " guitar",
    " lyricist", " currency", " newspaper", " circulated",
};

}  // namespace

std::span<const std::string_view> EntityWords() { return kEntityWords; }
std::span<const std::string_view> RelationLabels() { return kRelations; }
std::span<const std::string_view> ExtraPieces() { return kExtra; }

std::shared_ptr<const Vocabulary> ReferenceVocabulary() {
  static const std::shared_ptr<const Vocabulary> vocab = [] {
    std::vector<std::string> pieces = {"<s>", "</s>", "[MASK]", "\n", "\t",
                                       std::string(kPathDelimiter),
                                       "\xE2\x86\x92"};
    for (int c = 0x20; c <= 0x7E; ++c) pieces.emplace_back(1, char(c));

    std::set<std::string> words;
    for (std::string_view w : kEntityWords) {
      words.emplace(w);
      words.insert(" " + std::string(w));
    }
    for (std::string_view rel : kRelations) {
      std::size_t start = 0;
      while (start <= rel.size()) {
        std::size_t dot = rel.find('.', start);
        if (dot == std::string_view::npos) dot = rel.size();
        std::string_view segment = rel.substr(start, dot - start);
        std::size_t ws = 0;
        bool first = true;
        while (ws <= segment.size()) {
          std::size_t us = segment.find('_', ws);
          if (us == std::string_view::npos) us = segment.size();
          std::string word(segment.substr(ws, us - ws));
          if (!word.empty()) {
            words.insert(first ? word : "_" + word);
            words.insert(" " + word);
            words.insert(word);
          }
          first = false;
          ws = us + 1;
        }
        start = dot + 1;
      }
    }
    for (std::string_view w : kExtra) words.emplace(w);
    std::set<std::string> seen(pieces.begin(), pieces.end());
    for (const std::string& w : words) {
      if (seen.insert(w).second) pieces.push_back(w);
    }
    return std::make_shared<const Vocabulary>(std::move(pieces),
                                              ReservedIds{0, 1, 2});
  }();
  return vocab;
}

}  // namespace kgd
