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

#include "core/logits.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.h"

namespace kgd {

const char* LogitsStageName(LogitsStage stage) {
  switch (stage) {
    case LogitsStage::kRawMain: return "raw-main";
    case LogitsStage::kRawMask: return "raw-mask";
    case LogitsStage::kStrengthened: return "strengthened";
    case LogitsStage::kFiltered: return "filtered";
  }
  return "?";
}

namespace {

void RequireFinite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::kNumeric, std::string("non-finite ") + what +
                                           " logit at index " +
                                           std::to_string(i));
    }
  }
}

}  // namespace

LogitsVector Strengthen(const LogitsVector& main, const LogitsVector& mask,
                        double omega, CombineSpace space) {
  if (main.values.size() != mask.values.size()) {
    throw Error(ErrorCode::kShape,
                "branch logits differ in length: " +
                    std::to_string(main.values.size()) + " vs " +
                    std::to_string(mask.values.size()));
  }
  if (!std::isfinite(omega)) {
    throw Error(ErrorCode::kNumeric, "omega must be finite");
  }
  RequireFinite(main.values, "main");
  RequireFinite(mask.values, "mask");

  const std::size_t n = main.values.size();
  LogitsVector out{std::vector<double>(n), LogitsStage::kStrengthened};
  const double rest = 1.0 - omega;
  if (space == CombineSpace::kLogit) {
    for (std::size_t i = 0; i < n; ++i) {
      out.values[i] = omega * main.values[i] + rest * mask.values[i];
    }
    RequireFinite(out.values, "strengthened");
    return out;
  }
  const std::vector<double> p = Softmax(main.values);
  const std::vector<double> pm = Softmax(mask.values);
  for (std::size_t i = 0; i < n; ++i) {
    const double mass = omega * p[i] + rest * pm[i];
    out.values[i] =
        std::log(std::max(mass, std::numeric_limits<double>::min()));
  }
  return out;
}

LogitsVector Filter(const LogitsVector& z, const TokenAutomaton& automaton,
                    StateId state) {
  if (z.values.size() != automaton.vocab_size()) {
    throw Error(ErrorCode::kShape,
                "logits length " + std::to_string(z.values.size()) +
                    " != vocabulary size " +
                    std::to_string(automaton.vocab_size()));
  }
  if (automaton.AllowedCount(state) == 0) {
    throw Error(ErrorCode::kDeadEnd,
                "no token is allowed at state " + std::to_string(state));
  }
  LogitsVector out{std::vector<double>(z.values.size(), kDisallowed),
                   LogitsStage::kFiltered};
  for (const auto& [token, next] : automaton.Children(state)) {
    out.values[static_cast<std::size_t>(token)] =
        z.values[static_cast<std::size_t>(token)];
  }
  if (automaton.IsAccepting(state)) {
    const auto eos = static_cast<std::size_t>(automaton.eos());
    out.values[eos] = z.values[eos];
  }
  return out;
}

std::vector<double> Softmax(std::span<const double> z) {
  double max = kDisallowed;
  bool any = false;
  for (double v : z) {
    if (v != kDisallowed) {
      max = any ? std::max(max, v) : v;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::kNumeric, "softmax over an empty support");
  std::vector<double> out(z.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == kDisallowed) continue;
    out[i] = std::exp(z[i] - max);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> LogSoftmax(std::span<const double> z) {
  double max = kDisallowed;
  bool any = false;
  for (double v : z) {
    if (v != kDisallowed) {
      max = any ? std::max(max, v) : v;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::kNumeric, "softmax over an empty support");
  double sum = 0.0;
  for (double v : z) {
    if (v != kDisallowed) sum += std::exp(v - max);
  }
  const double log_norm = max + std::log(sum);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = z[i] == kDisallowed ? -std::numeric_limits<double>::infinity()
                                 : z[i] - log_norm;
  }
  return out;
}

LogitsVector StepLogits(const LogitsVector& main, const LogitsVector& mask,
                        const PipelineConfig& cfg,
                        const TokenAutomaton* automaton, StateId state) {
  LogitsVector z;
  if (cfg.strengthen) {
    z = Strengthen(main, mask, cfg.omega, cfg.space);
  } else {
    RequireFinite(main.values, "main");
    z = LogitsVector{main.values, LogitsStage::kStrengthened};
  }
  if (!cfg.filter) return z;
  if (automaton == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "filtering needs an automaton");
  }
  return Filter(z, *automaton, state);
}

std::vector<double> StepDistribution(const LogitsVector& main,
                                     const LogitsVector& mask,
                                     const PipelineConfig& cfg,
                                     const TokenAutomaton* automaton,
                                     StateId state) {
  return Softmax(StepLogits(main, mask, cfg, automaton, state).values);
}

nlohmann::ordered_json LogitsDebugRecord(
    std::size_t step, const std::string& prefix, const Tokenizer& tokenizer,
    const LogitsVector& main, const LogitsVector& mask,
    const LogitsVector& strengthened, const LogitsVector& filtered,
    std::size_t k) {
  auto value = [](double v) -> nlohmann::ordered_json {
    if (v == kDisallowed) return nullptr;
    return v;
  };
  std::vector<std::size_t> order(filtered.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (filtered.values[a] != filtered.values[b]) {
                        return filtered.values[a] > filtered.values[b];
                      }
                      return a < b;
                    });
  nlohmann::ordered_json top = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = order[r];
    nlohmann::ordered_json e;
    e["id"] = i;
    e["piece"] = std::string(tokenizer.Piece(static_cast<TokenId>(i)));
    e["raw_main"] = value(main.values.at(i));
    e["raw_mask"] = value(mask.values.empty() ? main.values.at(i)
                                              : mask.values.at(i));
    e["strengthened"] = value(strengthened.values.at(i));
    e["filtered"] = value(filtered.values.at(i));
    top.push_back(std::move(e));
  }
  nlohmann::ordered_json j;
  j["step"] = step;
  j["prefix"] = prefix;
  j["top_k"] = std::move(top);
  return j;
}

}  // namespace kgd
