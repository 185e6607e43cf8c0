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

#include "core/run.h"

#include <sstream>

#include "core/error.h"
#include "core/text_util.h"

namespace kgd {

std::shared_ptr<const Tokenizer> MakeTokenizer(const RunConfig& cfg) {
  if (cfg.vocab.empty()) return ReferenceTokenizer();
  return std::make_shared<const GreedyTokenizer>(
      std::make_shared<const Vocabulary>(LoadVocabularyFile(cfg.vocab)));
}

std::shared_ptr<const EmbeddingProvider> MakeEmbedder(const RunConfig& cfg) {
  const EmbedderConfig& e = cfg.embedder;
  if (e.kind == "http") {
    HttpEmbeddingOptions o;
    o.host = e.host;
    o.port = e.port;
    o.path = e.path;
    o.timeout = std::chrono::milliseconds(e.timeout_ms);
    o.max_attempts = e.max_attempts;
    return std::make_shared<const HttpEmbeddingClient>(o, e.dimension);
  }
  return std::make_shared<const HashingEmbedder>(e.dimension);
}

std::shared_ptr<const LmProvider> MakeLm(
    const RunConfig& cfg, std::shared_ptr<const Tokenizer> tokenizer) {
  ToyLmSpec spec = cfg.lm.kind == "adversarial"
                       ? ToyLmSpec::Adversarial(*tokenizer, cfg.lm.seed)
                       : ToyLmSpec::Calibrated(cfg.lm.seed);
  spec.copy_weight = cfg.lm.copy_weight;
  spec.smoothing = cfg.lm.smoothing;
  spec.bigram_noise = cfg.lm.bigram_noise;
  spec.branch_noise = cfg.lm.branch_noise;
  if (cfg.lm.kind == "adversarial") spec.distractor_bias = cfg.lm.distractor_bias;
  return std::make_shared<const ToyLm>(std::move(tokenizer), std::move(spec));
}

EngineOptions MakeEngineOptions(const RunConfig& cfg) {
  EngineOptions o;
  o.max_hops = cfg.max_hops;
  o.plus = cfg.plus;
  o.mask_form = cfg.mask_form;
  o.decode.beam_size = cfg.beam;
  o.decode.max_steps = cfg.max_steps;
  o.decode.trace_logits_top_k = cfg.trace_logits_top_k;
  o.pipeline.omega = cfg.omega;
  o.pipeline.space = cfg.space;
  o.pipeline.strengthen = cfg.strengthen;
  o.pipeline.filter = cfg.filter;
  return o;
}

EvalOptions MakeEvalOptions(const RunConfig& cfg) {
  EvalOptions o;
  o.match = cfg.match;
  o.f1_set = cfg.f1_set;
  o.jobs = cfg.jobs;
  return o;
}

Engine BuildEngine(const RunConfig& cfg,
                   std::shared_ptr<const KnowledgeGraph> kg) {
  auto tokenizer = MakeTokenizer(cfg);
  PromptTemplate tmpl = cfg.template_path.empty()
                            ? PromptTemplate::Default()
                            : PromptTemplate::FromFile(cfg.template_path);
  auto lm = MakeLm(cfg, tokenizer);
  return Engine(std::move(kg), tokenizer, MakeEmbedder(cfg), std::move(lm),
                std::move(tmpl), MakeEngineOptions(cfg));
}

nlohmann::ordered_json OutcomeToJson(const QuestionOutcome& o) {
  nlohmann::ordered_json j;
  j["id"] = o.id;
  j["ok"] = o.ok;
  j["answer"] = o.ok ? nlohmann::ordered_json(o.result.answer)
                     : nlohmann::ordered_json(nullptr);
  j["top1_path"] = o.top1_path;
  j["num_paths"] = o.num_paths;
  nlohmann::ordered_json ranked = nlohmann::ordered_json::array();
  for (const RankedPath& r : o.result.ranked) {
    ranked.push_back({{"path", r.text},
                      {"log_score", r.log_score},
                      {"tokens", r.tokens},
                      {"legal", r.legal}});
  }
  j["ranked"] = std::move(ranked);
  if (o.ok) {
    j["error"] = nullptr;
  } else {
    j["error"] = {{"code", o.error_code}, {"message", o.error}};
  }
  return j;
}

namespace {

struct Inputs {
  std::shared_ptr<const KnowledgeGraph> kg;
  std::vector<QuestionInstance> dataset;
};

Inputs LoadInputs(const RunConfig& cfg) {
  if (cfg.kg.empty()) throw Error(ErrorCode::kConfig, "no kg file given");
  if (cfg.dataset.empty()) {
    throw Error(ErrorCode::kConfig, "no dataset file given");
  }
  Inputs in;
  in.kg = std::make_shared<const KnowledgeGraph>(LoadTriplesFile(cfg.kg));
  in.dataset = LoadDatasetFile(cfg.dataset);
  return in;
}

}  // namespace

DecodeSummary RunDecode(const RunConfig& cfg) {
  const Inputs in = LoadInputs(cfg);
  const Engine engine = BuildEngine(cfg, in.kg);
  const std::size_t n = in.dataset.size();
  std::vector<QuestionOutcome> outcomes(n);
  std::vector<std::vector<nlohmann::ordered_json>> traces(n);
  const bool tracing = !cfg.trace_out.empty();
  const std::size_t jobs = engine.lm().concurrent() ? cfg.jobs : 1;
  ParallelFor(n, jobs, [&](std::size_t i) {
    TraceSink sink;
    if (tracing) {
      sink = [&traces, &in, i](const nlohmann::ordered_json& rec) {
        nlohmann::ordered_json r;
        r["id"] = in.dataset[i].id;
        for (const auto& [k, v] : rec.items()) r[k] = v;
        traces[i].push_back(std::move(r));
      };
    }
    outcomes[i] = engine.Run(in.dataset[i], sink);
  });
  DecodeSummary s;
  s.total = n;
  for (const QuestionOutcome& o : outcomes) {
    if (!o.ok) ++s.failed;
    s.jsonl += OutcomeToJson(o).dump();
    s.jsonl.push_back('\n');
  }
  if (!cfg.out.empty()) WriteFile(cfg.out, s.jsonl);
  if (tracing) {
    std::string text;
    for (const auto& per_question : traces) {
      for (const auto& rec : per_question) {
        text += rec.dump();
        text.push_back('\n');
      }
    }
    WriteFile(cfg.trace_out, text);
  }
  return s;
}

EvalSummary RunEvalCommand(const RunConfig& cfg) {
  const Inputs in = LoadInputs(cfg);
  const Engine engine = BuildEngine(cfg, in.kg);
  const EvalOptions options = MakeEvalOptions(cfg);
  const EvalReport report =
      RunEval(engine, in.dataset, options, cfg.ToJson());
  EvalSummary s;
  s.report_json = report.ToJson().dump(2) + "\n";
  s.total = report.questions.size();
  s.failed = report.failed;
  s.hit1 = report.hit1_mean;
  s.f1 = report.f1_mean;
  if (!cfg.report_out.empty()) WriteFile(cfg.report_out, s.report_json);
  if (!cfg.sweep_omega.empty()) {
    WriteFile(cfg.sweep_omega,
              SweepCsv("omega", SweepOmega(engine, in.dataset, options,
                                           kOmegaSweep)));
  }
  if (!cfg.sweep_beam.empty()) {
    WriteFile(cfg.sweep_beam,
              SweepCsv("beam",
                       SweepBeam(engine, in.dataset, options, kBeamSweep)));
  }
  return s;
}

SynthSummary RunSynth(const RunConfig& cfg) {
  if (cfg.kg.empty() || cfg.dataset.empty()) {
    throw Error(ErrorCode::kConfig, "synth needs kg and dataset output paths");
  }
  const SynthSuite suite = GenerateSynthSuite(cfg.synth);
  std::ostringstream triples;
  WriteTriples(KnowledgeGraph::FromTriples(suite.triples), triples);
  WriteFile(cfg.kg, triples.str());
  WriteFile(cfg.dataset, SerializeDataset(suite.questions));
  return {suite.triples.size(), suite.questions.size()};
}

SidecarOptions MakeSidecarOptions(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "sidecar options must be an object");
  nlohmann::json rest = j;
  nlohmann::json graphs = nlohmann::json::object();
  if (auto it = rest.find("graphs"); it != rest.end()) {
    graphs = *it;
    rest.erase(it);
  }
  for (const auto& [k, v] : rest.items()) {
    if (k != "vocab" && k != "max_hops" && k != "embedder" && k != "plus") {
      throw Error(ErrorCode::kConfig, "sidecar option '" + k + "': unknown key");
    }
  }
  const RunConfig cfg = RunConfig::FromJson(rest);
  SidecarOptions o;
  o.tokenizer = MakeTokenizer(cfg);
  o.embedder = MakeEmbedder(cfg);
  o.max_hops = cfg.max_hops;
  o.plus = cfg.plus;
  if (!graphs.is_object()) {
    throw Error(ErrorCode::kConfig, "sidecar option 'graphs' must be an object");
  }
  for (const auto& [name, path] : graphs.items()) {
    if (!path.is_string()) {
      throw Error(ErrorCode::kConfig, "graph '" + name + "' needs a file path");
    }
    o.graphs[name] = std::make_shared<const KnowledgeGraph>(
        LoadTriplesFile(path.get<std::string>()));
  }
  return o;
}

}  // namespace kgd
