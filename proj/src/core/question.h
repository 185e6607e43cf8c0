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

#ifndef KGDECODE_CORE_QUESTION_H_
#define KGDECODE_CORE_QUESTION_H_

#include <string>
#include <string_view>
#include <vector>

namespace kgd {

struct QuestionInstance {
  std::string id;
  std::string question;
  std::vector<std::string> topic_entities;
  std::vector<std::string> answers;  // evaluation only
};

// JSON lines, one {"id", "question", "topic_entities", "answers"} object per
// line. Blank lines are skipped. Throws ParseError with the line number.
std::vector<QuestionInstance> ParseDataset(std::string_view data);
std::vector<QuestionInstance> LoadDatasetFile(const std::string& path);
std::string SerializeDataset(const std::vector<QuestionInstance>& questions);

}  // namespace kgd

#endif  // KGDECODE_CORE_QUESTION_H_
