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

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/embedding.h"
#include "core/error.h"
#include "core/eval.h"
#include "core/kg_store.h"
#include "core/lm.h"
#include "core/metrics.h"
#include "core/pipeline.h"
#include "core/synth.h"
#include "doctest.h"
#include "test_util.h"

namespace kgd {
namespace {

using test::CodeOf;

TEST_CASE("hit@1 on the currency example") {
  const std::vector<std::string> gold = {"Egyptian pound"};
  CHECK(HitAt1("Egyptian pound", gold) == 1);
  CHECK(HitAt1("Sudanese Pound", gold) == 0);
  CHECK(HitAt1("  egyptian POUND ", gold) == 1);
  CHECK(HitAt1("  egyptian POUND ", gold, MatchMode::kStrict) == 0);
  CHECK(HitAt1("Egyptian pound ", gold, MatchMode::kStrict) == 1);
  CHECK(CodeOf([] { HitAt1("x", {}); }) == ErrorCode::kDataset);
}

TEST_CASE("f1 worked examples") {
  auto f = ComputeF1({"a", "b"}, {"b", "c"});
  CHECK(f.precision == 0.5);
  CHECK(f.recall == 0.5);
  CHECK(f.f1 == 0.5);
  f = ComputeF1({"A", "a", "b"}, {"a"});
  CHECK(f.precision == 0.5);
  CHECK(f.recall == 1.0);
  CHECK(f.f1 == doctest::Approx(2.0 / 3.0));
  f = ComputeF1({}, {"a"});
  CHECK(f.f1 == 0.0);
  f = ComputeF1({"x"}, {"a"});
  CHECK(f.f1 == 0.0);
  f = ComputeF1({"a", "b"}, {"a", "b", "c", "d"});
  CHECK(f.precision == 1.0);
  CHECK(f.recall == 0.5);
  CHECK(f.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(CodeOf([] { ComputeF1({"a"}, {}); }) == ErrorCode::kDataset);
}

TEST_CASE("f1 agrees with direct set arithmetic") {
  std::mt19937_64 rng(12);
  const std::vector<std::string> pool = {"a", "B", "b", "c", "d", "E", "e"};
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> pred, gold;
    for (const auto& x : pool) {
      if (rng() % 2) pred.push_back(x);
      if (rng() % 3 == 0) gold.push_back(x);
    }
    if (gold.empty()) gold.push_back("a");
    std::set<std::string> p, g;
    for (auto x : pred) p.insert(std::string(1, static_cast<char>(std::tolower(x[0]))));
    for (auto x : gold) g.insert(std::string(1, static_cast<char>(std::tolower(x[0]))));
    double common = 0;
    for (const auto& x : p) common += g.count(x);
    const double prec = p.empty() ? 0 : common / static_cast<double>(p.size());
    const double rec = common / static_cast<double>(g.size());
    const double want = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0;
    CHECK(ComputeF1(pred, gold).f1 == doctest::Approx(want).epsilon(1e-12));
  }
}

QuestionOutcome Outcome(std::vector<std::pair<std::string, bool>> ranked) {
  QuestionOutcome o;
  o.id = "q";
  o.ok = true;
  double s = 0;
  for (auto& [text, legal] : ranked) {
    o.result.ranked.push_back({text, s, {}, legal});
    s -= 1;
  }
  o.result.answer = FinalEntity(o.result.ranked[0].text);
  return o;
}

const std::string kArrow = " \xE2\x86\x92 ";

TEST_CASE("drift classes and per-question metrics") {
  QuestionInstance q{"q", "?", {"Akher Saa"}, {"Egyptian pound"}};
  const std::string good = "Egypt" + kArrow + "r" + kArrow + "Egyptian pound";
  const std::string other = "Sudan" + kArrow + "r" + kArrow + "Sudanese Pound";
  EvalOptions opts;

  auto r = ScoreOutcome(Outcome({{good, true}, {other, true}}), q, opts);
  CHECK(r.ok);
  CHECK(r.hit1 == 1);
  CHECK(r.drift == DriftClass::kNone);
  CHECK(r.ranked_answers ==
        std::vector<std::string>{"Egyptian pound", "Sudanese Pound"});
  CHECK(r.f1.precision == 0.5);
  opts.f1_set = EvalOptions::F1Set::kTop1;
  CHECK(ScoreOutcome(Outcome({{good, true}, {other, true}}), q, opts).f1.f1 ==
        1.0);
  opts.f1_set = EvalOptions::F1Set::kAll;

  r = ScoreOutcome(Outcome({{other, true}, {good, true}}), q, opts);
  CHECK(r.hit1 == 0);
  CHECK(r.drift == DriftClass::kQuestionInconsistent);

  // Any illegal path makes the question kg-inconsistent, even with a hit.
  r = ScoreOutcome(Outcome({{good, true}, {other, false}}), q, opts);
  CHECK(r.hit1 == 1);
  CHECK(r.drift == DriftClass::kKgInconsistent);

  QuestionOutcome failed;
  failed.id = "q";
  failed.error_code = "lookup";
  failed.error = "unknown entity";
  r = ScoreOutcome(failed, q, opts);
  CHECK(!r.ok);
  CHECK(r.error == "lookup: unknown entity");
  CHECK(r.hit1 == 0);

  q.answers.clear();
  r = ScoreOutcome(Outcome({{good, true}}), q, opts);
  CHECK(!r.ok);
  CHECK(r.error.rfind("dataset", 0) == 0);
}

class SynthEngine {
 public:
  SynthEngine() {
    SynthOptions o;
    o.num_questions = 40;
    o.seed = 3;
    suite_ = GenerateSynthSuite(o);
    kg_ = std::make_shared<KnowledgeGraph>(
        KnowledgeGraph::FromTriples(suite_.triples));
    tok_ = ReferenceTokenizer();
  }
  Engine Make(EngineOptions opts = {}, bool adversarial = false) const {
    return Engine(kg_, tok_, std::make_shared<HashingEmbedder>(),
                  std::make_shared<ToyLm>(
                      tok_, adversarial ? ToyLmSpec::Adversarial(*tok_)
                                        : ToyLmSpec::Calibrated()),
                  PromptTemplate::Default(), opts);
  }
  SynthSuite suite_;
  std::shared_ptr<const KnowledgeGraph> kg_;
  std::shared_ptr<const GreedyTokenizer> tok_;
};

TEST_CASE_FIXTURE(SynthEngine, "aggregates are means over all questions") {
  auto data = suite_.questions;
  data.push_back({"broken", "What?", {"Nowhere Land"}, {"x"}});
  const auto rep = RunEval(Make(), data, {});
  REQUIRE(rep.questions.size() == data.size());
  double hit = 0, f1 = 0;
  std::size_t failed = 0;
  std::array<std::size_t, 3> drift{};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& q = rep.questions[i];
    CHECK(q.id == data[i].id);
    hit += q.hit1;
    f1 += q.f1.f1;
    if (q.ok) {
      drift[static_cast<std::size_t>(q.drift)]++;
    } else {
      ++failed;
    }
  }
  CHECK(failed == 1);
  CHECK(rep.failed == 1);
  CHECK(rep.hit1_mean == doctest::Approx(hit / static_cast<double>(data.size())));
  CHECK(rep.f1_mean == doctest::Approx(f1 / static_cast<double>(data.size())));
  CHECK(rep.drift_counts == drift);
  CHECK(drift[0] + drift[1] + drift[2] + failed == data.size());

  const auto j = rep.ToJson();
  CHECK(j["aggregate"]["questions"] == data.size());
  CHECK(j["aggregate"]["failed"] == 1);
  CHECK(j["questions"].back()["ok"] == false);
  CHECK(j["questions"].back()["drift"].is_null());
  CHECK(j["questions"][0]["drift"].is_string());
  CHECK(j["aggregate"]["drift"].contains("kg-inconsistent"));
}

TEST_CASE_FIXTURE(SynthEngine, "reports are reproducible across runs and jobs") {
  const auto a = RunEval(Make(), suite_.questions, {}).ToJson();
  const auto b = RunEval(Make(), suite_.questions, {}).ToJson();
  EvalOptions four;
  four.jobs = 4;
  const auto c = RunEval(Make(), suite_.questions, four).ToJson();
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE_FIXTURE(SynthEngine, "ablations degrade in the expected order") {
  const auto full = RunEval(Make(), suite_.questions, {});
  EngineOptions no_s;
  no_s.pipeline.strengthen = false;
  const auto without_s = RunEval(Make(no_s), suite_.questions, {});
  EngineOptions none = no_s;
  none.pipeline.filter = false;
  const auto without_both = RunEval(Make(none), suite_.questions, {});
  CHECK(full.hit1_mean == 1.0);
  CHECK(full.drift_count(DriftClass::kKgInconsistent) == 0);
  CHECK(without_s.hit1_mean < full.hit1_mean);
  CHECK(without_both.hit1_mean <= without_s.hit1_mean);
  CHECK(without_both.drift_count(DriftClass::kKgInconsistent) > 0);

  EngineOptions nf;
  nf.pipeline.filter = false;
  const auto adv = RunEval(Make(nf, true), suite_.questions, {});
  CHECK(adv.drift_count(DriftClass::kKgInconsistent) >= 1);
  const auto adv_full = RunEval(Make({}, true), suite_.questions, {});
  CHECK(adv_full.drift_count(DriftClass::kKgInconsistent) == 0);
}

TEST_CASE_FIXTURE(SynthEngine, "sweeps match standalone runs") {
  const Engine e = Make();
  const auto omega = SweepOmega(e, suite_.questions, {}, kOmegaSweep);
  REQUIRE(omega.size() == 7);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    CHECK(omega[i].value == kOmegaSweep[i]);
    EngineOptions o = e.options();
    o.pipeline.omega = kOmegaSweep[i];
    const auto rep = RunEval(e.WithOptions(o), suite_.questions, {});
    CHECK(omega[i].hit1 == rep.hit1_mean);
    CHECK(omega[i].f1 == rep.f1_mean);
  }
  const auto beam = SweepBeam(e, suite_.questions, {}, kBeamSweep);
  REQUIRE(beam.size() == 5);
  CHECK(beam.back().hit1 == 1.0);
  CHECK(beam.front().value == 1.0);

  const std::string csv = SweepCsv("omega", {{2, 1, 0.5}, {-1, 0.25, 0.125}});
  CHECK(csv == "omega,hit1,f1\n2,1.000000,0.500000\n-1,0.250000,0.125000\n");
}

}  // namespace
}  // namespace kgd
