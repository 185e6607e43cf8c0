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

#ifndef KGDECODE_CORE_PROMPTING_H_
#define KGDECODE_CORE_PROMPTING_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/path_scoring.h"
#include "core/question.h"

namespace kgd {

inline constexpr std::string_view kDefaultMaskForm = "[MASK]";

// Prompt text with the placeholders {INSTRUCTION}, {QUESTION},
// {TOPIC_ENTITIES} and {PATHS}. {PATHS} must occur exactly once; the others
// at least once.
class PromptTemplate {
 public:
  // Throws Error(kTemplate) if a placeholder is missing.
  explicit PromptTemplate(std::string text,
                          std::string instruction = DefaultInstruction());

  static PromptTemplate Default();
  static PromptTemplate FromFile(const std::string& path);
  static std::string DefaultText();
  static std::string DefaultInstruction();

  const std::string& text() const { return text_; }
  const std::string& instruction() const { return instruction_; }

 private:
  std::string text_;
  std::string instruction_;
};

struct MaskedSpan {
  std::size_t begin = 0;  // byte range [begin, end) in the original prompt
  std::size_t end = 0;
  std::size_t path_index = 0;  // entry index in the ScoredPathSet
};

struct PromptPair {
  std::string original;
  std::string masked;
  std::vector<MaskedSpan> masked_spans;
};

// Paths are listed one per line in entry order; scores never appear. In the
// masked prompt each plus-set path line is replaced by `mask_form`
// (std::nullopt keeps the text, making masked == original).
PromptPair BuildPrompts(const PromptTemplate& tmpl, const QuestionInstance& q,
                        const ScoredPathSet& paths,
                        const std::optional<std::string>& mask_form =
                            std::string(kDefaultMaskForm));

}  // namespace kgd

#endif  // KGDECODE_CORE_PROMPTING_H_
