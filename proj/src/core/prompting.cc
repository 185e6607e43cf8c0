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

#include "core/prompting.h"

#include <array>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

namespace {

constexpr std::string_view kInstruction = "{INSTRUCTION}";
constexpr std::string_view kQuestion = "{QUESTION}";
constexpr std::string_view kTopics = "{TOPIC_ENTITIES}";
constexpr std::string_view kPaths = "{PATHS}";

std::size_t CountOf(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t at = haystack.find(needle); at != std::string_view::npos;
       at = haystack.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

PromptTemplate::PromptTemplate(std::string text, std::string instruction)
    : text_(std::move(text)), instruction_(std::move(instruction)) {
  for (std::string_view p : {kInstruction, kQuestion, kTopics, kPaths}) {
    if (CountOf(text_, p) == 0) {
      throw Error(ErrorCode::kTemplate,
                  "template is missing placeholder " + std::string(p));
    }
  }
  if (CountOf(text_, kPaths) != 1) {
    throw Error(ErrorCode::kTemplate, "{PATHS} must appear exactly once");
  }
}

std::string PromptTemplate::DefaultText() {
  return "{INSTRUCTION}\n"
         "Question: {QUESTION}\n"
         "Topic entities: {TOPIC_ENTITIES}\n"
         "Paths:\n"
         "{PATHS}\n"
         "Answer path:\n";
}

std::string PromptTemplate::DefaultInstruction() {
  return "You are a reasoning assistant over a knowledge graph. Using only "
         "the paths listed below, output the single path that answers the "
         "question, copied exactly, with entities and relations joined by "
         "\" \xE2\x86\x92 \".";
}

PromptTemplate PromptTemplate::Default() {
  return PromptTemplate(DefaultText());
}

PromptTemplate PromptTemplate::FromFile(const std::string& path) {
  return PromptTemplate(ReadFile(path));
}

PromptPair BuildPrompts(const PromptTemplate& tmpl, const QuestionInstance& q,
                        const ScoredPathSet& paths,
                        const std::optional<std::string>& mask_form) {
  std::string topics;
  for (std::size_t i = 0; i < q.topic_entities.size(); ++i) {
    if (i > 0) topics += ", ";
    topics += q.topic_entities[i];
  }

  PromptPair out;
  const std::string& text = tmpl.text();
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '{') {
      const std::string_view rest(text.data() + pos, text.size() - pos);
      auto emit = [&](std::string_view value) {
        out.original += value;
        out.masked += value;
      };
      if (rest.starts_with(kInstruction)) {
        emit(tmpl.instruction());
        pos += kInstruction.size();
        continue;
      }
      if (rest.starts_with(kQuestion)) {
        emit(q.question);
        pos += kQuestion.size();
        continue;
      }
      if (rest.starts_with(kTopics)) {
        emit(topics);
        pos += kTopics.size();
        continue;
      }
      if (rest.starts_with(kPaths)) {
        for (std::size_t i = 0; i < paths.entries.size(); ++i) {
          if (i > 0) emit("\n");
          const std::string& line = paths.entries[i].text;
          if (paths.IsPlus(i)) {
            out.masked_spans.push_back(
                {out.original.size(), out.original.size() + line.size(), i});
            out.original += line;
            out.masked += mask_form ? *mask_form : line;
          } else {
            emit(line);
          }
        }
        pos += kPaths.size();
        continue;
      }
    }
    out.original.push_back(text[pos]);
    out.masked.push_back(text[pos]);
    ++pos;
  }
  return out;
}

}  // namespace kgd
