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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/question.h"
#include "core/run.h"
#include "core/run_config.h"
#include "doctest.h"
#include "json.hpp"
#include "test_util.h"

namespace kgd {
namespace {

using nlohmann::json;
using test::CodeOf;
using test::TempDir;
using test::WriteText;

TEST_CASE("dataset lines parse with and without answers") {
  const auto qs = ParseDataset(
      "{\"id\":\"a\",\"question\":\"Q1?\",\"topic_entities\":[\"X\"],"
      "\"answers\":[\"Y\",\"Z\"]}\n"
      "\n"
      "  {\"id\":\"b\",\"question\":\"Q2?\",\"topic_entities\":[\"X\",\"W\"]}  \n");
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].answers == std::vector<std::string>{"Y", "Z"});
  CHECK(qs[1].answers.empty());
  CHECK(qs[1].topic_entities.size() == 2);
  CHECK(ParseDataset(SerializeDataset(qs))[0].id == "a");
}

TEST_CASE("dataset errors name the line") {
  const char* bad[] = {
      "[1,2]",
      "{\"id\":\"a\",\"question\":\"Q\"}",
      "{\"id\":\"a\",\"question\":\"  \",\"topic_entities\":[\"X\"]}",
      "{\"id\":\"a\",\"question\":\"Q\",\"topic_entities\":[]}",
      "{\"id\":1,\"question\":\"Q\",\"topic_entities\":[\"X\"]}",
      "{\"id\":\"a\",\"question\":\"Q\",\"topic_entities\":[\"X\"],"
      "\"answers\":\"Y\"}",
      "{not json",
  };
  for (const char* line : bad) {
    CAPTURE(line);
    const std::string data =
        std::string("{\"id\":\"ok\",\"question\":\"Q\",\"topic_entities\":[\"X\"]}\n\n") +
        line + "\n";
    try {
      ParseDataset(data);
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
}

TEST_CASE("config json round trip and defaults") {
  const RunConfig d;
  CHECK(RunConfig::FromJson(json::object()) == d);
  CHECK(RunConfig::FromJson(json::parse(d.ToJson().dump())) == d);
  const auto j = d.ToJson();
  CHECK(j["omega"] == 2.0);
  CHECK(j["space"] == "logit");
  CHECK(j["beam"] == 20);
  CHECK(j["max_hops"] == 2);
  CHECK(j["mask_form"] == "[MASK]");
  CHECK(j["plus"]["kind"] == "top1");
  CHECK(j["lm"]["kind"] == "toy");
  CHECK(j["embedder"]["kind"] == "reference");
  CHECK(j["match"] == "casefold");
  CHECK(j["f1_set"] == "all");

  RunConfig c;
  c.omega = -1.5;
  c.space = CombineSpace::kProbability;
  c.mask_form.reset();
  c.plus = {PlusPolicy::Kind::kThreshold, 3, 0.25};
  c.lm.kind = "adversarial";
  c.embedder.port = 9999;
  c.match = MatchMode::kStrict;
  c.f1_set = EvalOptions::F1Set::kTop1;
  c.synth.num_questions = 12;
  const RunConfig back = RunConfig::FromJson(json::parse(c.ToJson().dump()));
  CHECK(back == c);
  CHECK(!back.mask_form.has_value());
  CHECK(back.plus.tau == 0.25);
}

TEST_CASE("config validation") {
  const char* bad[] = {
      R"({"omegaa": 2})",
      R"({"omega": "2"})",
      R"({"beam": 0})",
      R"({"beam": -3})",
      R"({"beam": 2.5})",
      R"({"space": "log"})",
      R"({"max_hops": 0})",
      R"({"strengthen": 1})",
      R"({"mask_form": ""})",
      R"({"plus": {"kind": "all"}})",
      R"({"plus": {"kk": 1}})",
      R"({"lm": {"kind": "gpt"}})",
      R"({"lm": {"smoothing": 0}})",
      R"({"embedder": {"kind": "other"}})",
      R"({"embedder": {"max_attempts": 0}})",
      R"({"match": "exact"})",
      R"({"f1_set": "some"})",
      R"({"jobs": 0})",
      R"({"synth": {"questions": 3}})",
      R"({"lm": 3})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK(CodeOf([&] { RunConfig::FromJson(json::parse(text)); }) ==
          ErrorCode::kConfig);
  }
  try {
    RunConfig::FromJson(json::parse(R"({"lm": {"sed": 1}})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("lm.sed") != std::string::npos);
  }
}

TEST_CASE("overrides win over the file, recursively") {
  const std::string file =
      R"({"omega": 3, "beam": 5, "lm": {"kind": "adversarial", "seed": 11}})";
  const RunConfig c = ResolveConfig(file, json{{"beam", 7}, {"lm", {{"seed", 12}}}});
  CHECK(c.omega == 3.0);
  CHECK(c.beam == 7);
  CHECK(c.lm.kind == "adversarial");
  CHECK(c.lm.seed == 12);
  CHECK(ResolveConfig("", json{{"mask_form", nullptr}}).mask_form == std::nullopt);
  CHECK(ResolveConfig("", nullptr) == RunConfig());
  CHECK(CodeOf([] { ResolveConfig("{", nullptr); }) == ErrorCode::kConfig);
  CHECK(CodeOf([] { ResolveConfig("[]", nullptr); }) == ErrorCode::kConfig);
  CHECK(CodeOf([] { ResolveConfig("", json::array()); }) == ErrorCode::kConfig);
  CHECK(MergeConfig(json{{"a", {{"b", 1}, {"c", 2}}}}, json{{"a", {{"b", 3}}}}) ==
        json{{"a", {{"b", 3}, {"c", 2}}}});
}

TEST_CASE("decode run writes jsonl and traces in dataset order") {
  TempDir dir;
  WriteText(dir / "q.jsonl",
            "{\"id\":\"first\",\"question\":\"What currency is used in the "
            "circulation areas of Akher Saa?\",\"topic_entities\":[\"Akher Saa\"]}\n"
            "{\"id\":\"second\",\"question\":\"Who is it?\",\"topic_entities\":"
            "[\"Atlantis\"]}\n"
            "{\"id\":\"third\",\"question\":\"Which guitars has Joe Walsh "
            "played?\",\"topic_entities\":[\"Joe Walsh\"]}\n");
  RunConfig cfg;
  cfg.kg = test::DataPath("fixture_kg.tsv");
  cfg.dataset = dir / "q.jsonl";
  cfg.out = dir / "out.jsonl";
  cfg.trace_out = dir / "trace.jsonl";
  cfg.jobs = 3;
  const auto s = RunDecode(cfg);
  CHECK(s.total == 3);
  CHECK(s.failed == 1);
  CHECK(test::ReadPath(cfg.out) == s.jsonl);
  std::vector<json> lines;
  std::stringstream ss(s.jsonl);
  for (std::string l; std::getline(ss, l);) lines.push_back(json::parse(l));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["id"] == "first");
  CHECK(lines[0]["ok"] == true);
  CHECK(lines[0]["answer"] == "Egyptian pound");
  CHECK(lines[0]["error"].is_null());
  CHECK(lines[0]["ranked"][0]["legal"] == true);
  CHECK(lines[0]["ranked"][0]["log_score"].get<double>() <= 0.0);
  CHECK(lines[1]["ok"] == false);
  CHECK(lines[1]["answer"].is_null());
  CHECK(lines[1]["error"]["code"] == "lookup");
  CHECK(lines[2]["answer"] == "Fender Stratocaster");

  std::stringstream tr(test::ReadPath(cfg.trace_out));
  std::size_t n = 0;
  for (std::string l; std::getline(tr, l); ++n) {
    const auto r = nlohmann::ordered_json::parse(l);
    CHECK(r.begin().key() == "id");
  }
  CHECK(n > 5);
}

TEST_CASE("eval and synth runs write their files") {
  TempDir dir;
  RunConfig cfg;
  cfg.kg = dir / "kg.tsv";
  cfg.dataset = dir / "q.jsonl";
  cfg.synth.num_questions = 15;
  const auto syn = RunSynth(cfg);
  CHECK(syn.questions == 15);
  CHECK(LoadDatasetFile(cfg.dataset).size() == 15);
  CHECK(LoadTriplesFile(cfg.kg).triples().size() == syn.triples);

  cfg.report_out = dir / "report.json";
  cfg.sweep_omega = dir / "omega.csv";
  cfg.sweep_beam = dir / "beam.csv";
  const auto ev = RunEvalCommand(cfg);
  CHECK(ev.total == 15);
  CHECK(ev.failed == 0);
  CHECK(ev.hit1 == 1.0);
  const auto rep = json::parse(test::ReadPath(cfg.report_out));
  CHECK(rep["aggregate"]["hit1"] == 1.0);
  CHECK(rep["config"]["kg"] == cfg.kg);
  CHECK(RunConfig::FromJson(rep["config"]) == cfg);
  const std::string omega = test::ReadPath(cfg.sweep_omega);
  CHECK(std::count(omega.begin(), omega.end(), '\n') == 8);
  CHECK(omega.rfind("omega,hit1,f1\n-1,", 0) == 0);
  const std::string beam = test::ReadPath(cfg.sweep_beam);
  CHECK(std::count(beam.begin(), beam.end(), '\n') == 6);

  RunConfig missing = cfg;
  missing.kg = dir / "nope.tsv";
  CHECK(CodeOf([&] { RunEvalCommand(missing); }) == ErrorCode::kIo);
}

TEST_CASE("sidecar options from json") {
  const auto o = MakeSidecarOptions(
      json{{"graphs", {{"fixture", test::DataPath("fixture_kg.tsv")}}},
           {"max_hops", 1}});
  CHECK(o.graphs.count("fixture") == 1);
  CHECK(o.max_hops == 1);
  CHECK(o.tokenizer != nullptr);
  CHECK(o.embedder != nullptr);
  CHECK(CodeOf([] { MakeSidecarOptions(json{{"graph", json::object()}}); }) ==
        ErrorCode::kConfig);
  CHECK(CodeOf([] {
          MakeSidecarOptions(json{{"graphs", {{"g", "/nonexistent.tsv"}}}});
        }) == ErrorCode::kIo);
}

}  // namespace
}  // namespace kgd
