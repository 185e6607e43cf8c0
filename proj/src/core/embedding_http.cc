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

#include <thread>

#include "core/embedding.h"
#include "core/error.h"
#include "httplib.h"
#include "json.hpp"

namespace kgd {

HttpEmbeddingClient::HttpEmbeddingClient(HttpEmbeddingOptions options,
                                         std::size_t dimension)
    : options_(std::move(options)), dimension_(dimension) {
  if (options_.max_attempts < 1) options_.max_attempts = 1;
}

std::vector<Embedding> HttpEmbeddingClient::EmbedBatch(
    std::span<const std::string> texts) const {
  const std::string body =
      nlohmann::json{{"texts", std::vector<std::string>(texts.begin(),
                                                        texts.end())}}
          .dump();
  std::string last_error;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    if (attempt > 1) std::this_thread::sleep_for(options_.retry_backoff * (attempt - 1));
    httplib::Client client(options_.host, options_.port);
    const auto secs = options_.timeout.count() / 1000;
    const auto usecs = (options_.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    auto res = client.Post(options_.path, body, "application/json");
    if (!res) {
      last_error = "embedding service unreachable: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "embedding service returned " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError(
          "embedding service returned " + std::to_string(res->status), false);
    }
    nlohmann::json doc = nlohmann::json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("vectors") ||
        !doc["vectors"].is_array() || doc["vectors"].size() != texts.size()) {
      throw ProviderError("malformed embedding response", false);
    }
    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& row : doc["vectors"]) {
      if (!row.is_array() || row.size() != dimension_) {
        throw ProviderError("embedding has wrong dimension", false);
      }
      Embedding v;
      v.reserve(dimension_);
      for (const auto& x : row) {
        if (!x.is_number()) throw ProviderError("non-numeric embedding", false);
        v.push_back(x.get<double>());
      }
      try {
        Normalize(v);
      } catch (const Error&) {
        throw ProviderError("zero or non-finite embedding", false);
      }
      out.push_back(std::move(v));
    }
    return out;
  }
  throw ProviderError(last_error, true);
}

}  // namespace kgd
