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

#ifndef KGDECODE_CORE_EMBEDDING_H_
#define KGDECODE_CORE_EMBEDDING_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgd {

using Embedding = std::vector<double>;

// Sentence embedder. Implementations return unit-norm vectors of a fixed
// dimension and are deterministic per provider.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::size_t dimension() const = 0;
  // Throws ProviderError on failure.
  virtual std::vector<Embedding> EmbedBatch(
      std::span<const std::string> texts) const = 0;

  Embedding Embed(std::string_view text) const;
};

// Bag of lowercase alphanumeric tokens hashed (FNV-1a) into `dimension`
// buckets, then L2-normalized. Entries are non-negative.
class HashingEmbedder : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 256;

  explicit HashingEmbedder(std::size_t dimension = kDefaultDimension);

  std::size_t dimension() const override { return dimension_; }
  std::vector<Embedding> EmbedBatch(
      std::span<const std::string> texts) const override;

  // Lowercased maximal runs of ASCII letters and digits.
  static std::vector<std::string> Tokenize(std::string_view text);

 private:
  std::size_t dimension_;
};

struct HttpEmbeddingOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string path = "/embed";
  std::chrono::milliseconds timeout{5000};
  int max_attempts = 3;
  std::chrono::milliseconds retry_backoff{100};
};

// Client for an external embedding service.
// Request:  POST {"texts": [...]}
// Response: {"vectors": [[...], ...]}
// Returned vectors are re-normalized. Connection failures and 5xx responses
// are retried up to max_attempts and then reported as retryable.
class HttpEmbeddingClient : public EmbeddingProvider {
 public:
  HttpEmbeddingClient(HttpEmbeddingOptions options, std::size_t dimension);

  std::size_t dimension() const override { return dimension_; }
  std::vector<Embedding> EmbedBatch(
      std::span<const std::string> texts) const override;

 private:
  HttpEmbeddingOptions options_;
  std::size_t dimension_;
};

double Dot(std::span<const double> a, std::span<const double> b);
// Scales `v` to unit L2 norm. Throws Error(kNumeric) for a zero vector.
void Normalize(std::vector<double>& v);

}  // namespace kgd

#endif  // KGDECODE_CORE_EMBEDDING_H_
