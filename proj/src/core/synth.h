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

#ifndef KGDECODE_CORE_SYNTH_H_
#define KGDECODE_CORE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "core/kg_store.h"
#include "core/question.h"

namespace kgd {

struct SynthOptions {
  std::uint64_t seed = 1;
  std::size_t num_questions = 200;
  std::size_t min_entities = 5;
  std::size_t max_entities = 50;
  std::size_t max_out_degree = 3;
  int max_hops = 2;
};

struct SynthSuite {
  std::vector<Triple> triples;
  std::vector<QuestionInstance> questions;
};

// Random KGQA suite. Every question owns a disjoint random graph component
// whose first entity is the topic. A gold path of 1..max_hops hops is
// drawn from the extracted paths and the question is templated from its
// relation words, e.g. "What is the person nationality of Oak Ridge?".
// Questions whose top-1 reference-embedder path does not carry the gold
// relation sequence are redrawn. Gold answers are the final entities of
// every path sharing that relation sequence.
SynthSuite GenerateSynthSuite(const SynthOptions& options);

// Space separated words of the last two dot segments of a relation label:
// "people.person.place_of_birth" -> "person place of birth".
std::string RelationWords(std::string_view relation);

// Relations along a textualized path.
std::vector<std::string> RelationSequence(std::string_view path_text);

}  // namespace kgd

#endif  // KGDECODE_CORE_SYNTH_H_
