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

#include "core/eval.h"

#include <cstdio>
#include <set>

#include "core/error.h"
#include "core/kg_store.h"

namespace kgd {

const char* DriftClassName(DriftClass d) {
  switch (d) {
    case DriftClass::kNone: return "none";
    case DriftClass::kKgInconsistent: return "kg-inconsistent";
    case DriftClass::kQuestionInconsistent: return "question-inconsistent";
  }
  return "?";
}

QuestionReport ScoreOutcome(const QuestionOutcome& outcome,
                            const QuestionInstance& q,
                            const EvalOptions& options) {
  QuestionReport r;
  r.id = q.id;
  if (!outcome.ok) {
    r.error = outcome.error_code + ": " + outcome.error;
    return r;
  }
  std::set<std::string> seen;
  for (const RankedPath& p : outcome.result.ranked) {
    r.ranked_paths.push_back(p.text);
    r.legal.push_back(p.legal);
    std::string answer = FinalEntity(p.text);
    if (seen.insert(answer).second) r.ranked_answers.push_back(answer);
  }
  try {
    r.hit1 = HitAt1(outcome.result.answer, q.answers, options.match);
    const std::vector<std::string> predicted =
        options.f1_set == EvalOptions::F1Set::kAll
            ? r.ranked_answers
            : std::vector<std::string>{outcome.result.answer};
    r.f1 = ComputeF1(predicted, q.answers, options.match);
  } catch (const Error& e) {
    r.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
    r.hit1 = 0;
    r.f1 = {};
    return r;
  }
  r.ok = true;
  bool all_legal = true;
  for (bool legal : r.legal) all_legal = all_legal && legal;
  if (!all_legal) {
    r.drift = DriftClass::kKgInconsistent;
  } else if (r.hit1 == 0) {
    r.drift = DriftClass::kQuestionInconsistent;
  }
  return r;
}

EvalReport RunEval(const Engine& engine,
                   const std::vector<QuestionInstance>& dataset,
                   const EvalOptions& options, nlohmann::ordered_json config) {
  EvalReport report;
  report.config = std::move(config);
  report.questions.resize(dataset.size());
  const std::size_t jobs = engine.lm().concurrent() ? options.jobs : 1;
  ParallelFor(dataset.size(), jobs, [&](std::size_t i) {
    report.questions[i] =
        ScoreOutcome(engine.Run(dataset[i]), dataset[i], options);
  });
  double hit_sum = 0.0;
  double f1_sum = 0.0;
  for (const QuestionReport& q : report.questions) {
    hit_sum += q.hit1;
    f1_sum += q.f1.f1;
    if (q.ok) {
      report.drift_counts[static_cast<std::size_t>(q.drift)]++;
    } else {
      report.failed++;
    }
  }
  if (!dataset.empty()) {
    report.hit1_mean = hit_sum / double(dataset.size());
    report.f1_mean = f1_sum / double(dataset.size());
  }
  return report;
}

nlohmann::ordered_json EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["config"] = config;
  nlohmann::ordered_json agg;
  agg["questions"] = questions.size();
  agg["failed"] = failed;
  agg["hit1"] = hit1_mean;
  agg["f1"] = f1_mean;
  nlohmann::ordered_json drift;
  for (DriftClass d : {DriftClass::kNone, DriftClass::kKgInconsistent,
                       DriftClass::kQuestionInconsistent}) {
    drift[DriftClassName(d)] = drift_count(d);
  }
  agg["drift"] = std::move(drift);
  j["aggregate"] = std::move(agg);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const QuestionReport& q : questions) {
    nlohmann::ordered_json r;
    r["id"] = q.id;
    r["ok"] = q.ok;
    if (!q.error.empty()) r["error"] = q.error;
    r["ranked_answers"] = q.ranked_answers;
    r["ranked_paths"] = q.ranked_paths;
    r["legal"] = q.legal;
    r["hit1"] = q.hit1;
    r["precision"] = q.f1.precision;
    r["recall"] = q.f1.recall;
    r["f1"] = q.f1.f1;
    r["drift"] = q.ok ? nlohmann::ordered_json(DriftClassName(q.drift))
                      : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(r));
  }
  j["questions"] = std::move(rows);
  return j;
}

std::vector<SweepRow> SweepOmega(const Engine& engine,
                                 const std::vector<QuestionInstance>& dataset,
                                 const EvalOptions& options,
                                 const std::vector<double>& omegas) {
  std::vector<SweepRow> rows;
  for (double omega : omegas) {
    EngineOptions o = engine.options();
    o.pipeline.omega = omega;
    o.pipeline.strengthen = true;
    const EvalReport r = RunEval(engine.WithOptions(o), dataset, options);
    rows.push_back({omega, r.hit1_mean, r.f1_mean});
  }
  return rows;
}

std::vector<SweepRow> SweepBeam(const Engine& engine,
                                const std::vector<QuestionInstance>& dataset,
                                const EvalOptions& options,
                                const std::vector<std::size_t>& beams) {
  std::vector<SweepRow> rows;
  for (std::size_t beam : beams) {
    EngineOptions o = engine.options();
    o.decode.beam_size = beam;
    const EvalReport r = RunEval(engine.WithOptions(o), dataset, options);
    rows.push_back({double(beam), r.hit1_mean, r.f1_mean});
  }
  return rows;
}

std::string SweepCsv(const std::string& column,
                     const std::vector<SweepRow>& rows) {
  std::string out = column + ",hit1,f1\n";
  char buf[128];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%g,%.6f,%.6f\n", r.value, r.hit1, r.f1);
    out += buf;
  }
  return out;
}

}  // namespace kgd
