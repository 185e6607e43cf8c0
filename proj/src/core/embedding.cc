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

#include "core/embedding.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

Embedding EmbeddingProvider::Embed(std::string_view text) const {
  std::string owned(text);
  auto out = EmbedBatch(std::span<const std::string>(&owned, 1));
  return std::move(out.at(0));
}

HashingEmbedder::HashingEmbedder(std::size_t dimension)
    : dimension_(dimension) {
  if (dimension_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension is zero");
  }
}

std::vector<std::string> HashingEmbedder::Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                       (c >= '0' && c <= '9');
    if (alnum) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<Embedding> HashingEmbedder::EmbedBatch(
    std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    if (text.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot embed empty text");
    }
    Embedding v(dimension_, 0.0);
    for (const std::string& token : Tokenize(text)) {
      v[Fnv1a64(token) % dimension_] += 1.0;
    }
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
      throw Error(ErrorCode::kInvalidArgument,
                  "text has no alphanumeric tokens: '" + text + "'");
    }
    Normalize(v);
    out.push_back(std::move(v));
  }
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShape, "embedding dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void Normalize(std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (!(sq > 0.0) || !std::isfinite(sq)) {
    throw Error(ErrorCode::kNumeric, "cannot normalize a zero vector");
  }
  const double inv = 1.0 / std::sqrt(sq);
  for (double& x : v) x *= inv;
}

}  // namespace kgd
