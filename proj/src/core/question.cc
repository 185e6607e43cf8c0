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

#include "core/question.h"

#include "core/error.h"
#include "core/text_util.h"
#include "json.hpp"

namespace kgd {

std::vector<QuestionInstance> ParseDataset(std::string_view data) {
  std::vector<QuestionInstance> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    std::string_view line = Trim(data.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    QuestionInstance q;
    try {
      q.id = doc.at("id").get<std::string>();
      q.question = doc.at("question").get<std::string>();
      q.topic_entities =
          doc.at("topic_entities").get<std::vector<std::string>>();
      if (doc.contains("answers")) {
        q.answers = doc.at("answers").get<std::vector<std::string>>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (Trim(q.question).empty()) throw ParseError(line_no, "empty question");
    if (q.topic_entities.empty()) {
      throw ParseError(line_no, "topic_entities is empty");
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QuestionInstance> LoadDatasetFile(const std::string& path) {
  return ParseDataset(ReadFile(path));
}

std::string SerializeDataset(const std::vector<QuestionInstance>& questions) {
  std::string out;
  for (const QuestionInstance& q : questions) {
    nlohmann::ordered_json j;
    j["id"] = q.id;
    j["question"] = q.question;
    j["topic_entities"] = q.topic_entities;
    j["answers"] = q.answers;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace kgd
