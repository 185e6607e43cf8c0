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

#ifndef KGDECODE_CORE_SIDECAR_H_
#define KGDECODE_CORE_SIDECAR_H_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "core/automaton.h"
#include "core/embedding.h"
#include "core/kg_store.h"
#include "core/logits.h"
#include "core/path_scoring.h"
#include "core/tokenizer.h"
#include "json.hpp"

namespace kgd {

inline constexpr int kProtocolVersion = 1;

struct SidecarOptions {
  std::shared_ptr<const Tokenizer> tokenizer;
  std::shared_ptr<const EmbeddingProvider> embedder;
  // kg_ref name -> graph
  std::map<std::string, std::shared_ptr<const KnowledgeGraph>> graphs;
  int max_hops = 2;
  PlusPolicy plus;
  std::size_t max_sessions = 4096;
};

// Stateful per-token logits service. One JSON request in, one JSON
// response out; see docs/protocol.md for the frame schemas.
//
// Thread-safe. Requests for different sessions run in parallel; requests
// for the same session are serialized.
class SidecarService {
 public:
  explicit SidecarService(SidecarOptions options);

  // Never throws; malformed input yields an error response.
  std::string HandleFrame(std::string_view frame);
  nlohmann::ordered_json Handle(const nlohmann::json& request);

  std::size_t session_count() const;
  const Tokenizer& tokenizer() const { return *options_.tokenizer; }

 private:
  struct Session {
    std::mutex mu;
    std::shared_ptr<const TokenAutomaton> automaton;
    StateId state = 0;
    PipelineConfig pipeline;
    bool finished = false;
  };

  nlohmann::ordered_json Init(const nlohmann::json& req);
  nlohmann::ordered_json Step(const nlohmann::json& req);
  nlohmann::ordered_json Advance(const nlohmann::json& req);
  nlohmann::ordered_json Close(const nlohmann::json& req);

  std::shared_ptr<Session> Find(const std::string& id) const;

  SidecarOptions options_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace kgd

#endif  // KGDECODE_CORE_SIDECAR_H_
