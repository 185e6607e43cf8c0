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

#ifndef KGDECODE_CORE_WORD_LISTS_H_
#define KGDECODE_CORE_WORD_LISTS_H_

#include <span>
#include <string_view>

namespace kgd {

// Capitalized words used for synthetic entity labels.
std::span<const std::string_view> EntityWords();
// Freebase-style relation labels used by the synthetic generator.
std::span<const std::string_view> RelationLabels();
// Extra pieces for the reference vocabulary (common words, sample labels).
std::span<const std::string_view> ExtraPieces();

}  // namespace kgd

#endif  // KGDECODE_CORE_WORD_LISTS_H_
