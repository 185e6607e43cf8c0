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

#ifndef KGDECODE_CORE_EVAL_H_
#define KGDECODE_CORE_EVAL_H_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "core/metrics.h"
#include "core/pipeline.h"
#include "core/question.h"
#include "json.hpp"

namespace kgd {

enum class DriftClass { kNone, kKgInconsistent, kQuestionInconsistent };

const char* DriftClassName(DriftClass d);

struct EvalOptions {
  MatchMode match = MatchMode::kCaseFold;
  // Which answers count as predicted for F1: final entities of every
  // finished hypothesis, or of the top-1 path only.
  enum class F1Set { kAll, kTop1 };
  F1Set f1_set = F1Set::kAll;
  std::size_t jobs = 1;
};

struct QuestionReport {
  std::string id;
  bool ok = false;
  std::string error;
  std::vector<std::string> ranked_paths;
  std::vector<std::string> ranked_answers;
  std::vector<bool> legal;
  int hit1 = 0;
  F1Score f1;
  DriftClass drift = DriftClass::kNone;
};

struct EvalReport {
  std::vector<QuestionReport> questions;
  double hit1_mean = 0.0;
  double f1_mean = 0.0;
  std::array<std::size_t, 3> drift_counts{};  // indexed by DriftClass
  std::size_t failed = 0;
  nlohmann::ordered_json config;

  std::size_t drift_count(DriftClass d) const {
    return drift_counts[static_cast<std::size_t>(d)];
  }
  nlohmann::ordered_json ToJson() const;
};

// Scores one decoded question. Failed outcomes and empty gold sets get
// zero metrics and are not assigned a drift class.
QuestionReport ScoreOutcome(const QuestionOutcome& outcome,
                            const QuestionInstance& q,
                            const EvalOptions& options);

// Questions run concurrently (options.jobs) unless the LM is serial; the
// report keeps dataset order. Per-question failures never abort the run.
EvalReport RunEval(const Engine& engine,
                   const std::vector<QuestionInstance>& dataset,
                   const EvalOptions& options,
                   nlohmann::ordered_json config = {});

struct SweepRow {
  double value = 0.0;
  double hit1 = 0.0;
  double f1 = 0.0;
};

inline const std::vector<double> kOmegaSweep = {-1.0, 0.0, 1.0, 2.0,
                                                3.0,  5.0, 10.0};
inline const std::vector<std::size_t> kBeamSweep = {1, 2, 5, 10, 20};

std::vector<SweepRow> SweepOmega(const Engine& engine,
                                 const std::vector<QuestionInstance>& dataset,
                                 const EvalOptions& options,
                                 const std::vector<double>& omegas);
std::vector<SweepRow> SweepBeam(const Engine& engine,
                                const std::vector<QuestionInstance>& dataset,
                                const EvalOptions& options,
                                const std::vector<std::size_t>& beams);

// Header "<column>,hit1,f1" then one row per sweep point.
std::string SweepCsv(const std::string& column,
                     const std::vector<SweepRow>& rows);

}  // namespace kgd

#endif  // KGDECODE_CORE_EVAL_H_
