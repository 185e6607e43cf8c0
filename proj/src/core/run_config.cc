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

#include "core/run_config.h"

#include <cmath>
#include <set>

#include "core/error.h"

namespace kgd {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Bad(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kConfig, "config key '" + key + "': " + what);
}

void CheckKeys(const json& j, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!j.is_object()) Bad(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) {
      Bad(where.empty() ? k : where + "." + k, "unknown key");
    }
  }
}

template <typename T>
void Read(const json& j, const std::string& key, T& dst,
          const std::string& prefix = "") {
  auto it = j.find(key);
  if (it == j.end()) return;
  const std::string name = prefix.empty() ? key : prefix + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) Bad(name, "expected a boolean");
    dst = it->get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) Bad(name, "expected a string");
    dst = it->get<std::string>();
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!it->is_number()) Bad(name, "expected a number");
    dst = it->get<T>();
    if (!std::isfinite(dst)) Bad(name, "must be finite");
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      Bad(name, "expected a non-negative integer");
    }
    dst = it->get<T>();
  } else {
    if (!it->is_number_integer()) Bad(name, "expected an integer");
    dst = it->get<T>();
  }
}

const char* SpaceName(CombineSpace s) {
  return s == CombineSpace::kLogit ? "logit" : "probability";
}

const char* PlusKindName(PlusPolicy::Kind k) {
  switch (k) {
    case PlusPolicy::Kind::kTop1: return "top1";
    case PlusPolicy::Kind::kTopK: return "topk";
    case PlusPolicy::Kind::kThreshold: return "threshold";
  }
  return "top1";
}

}  // namespace

ordered_json RunConfig::ToJson() const {
  ordered_json j;
  j["kg"] = kg;
  j["dataset"] = dataset;
  j["out"] = out;
  j["vocab"] = vocab;
  j["template"] = template_path;
  j["trace_out"] = trace_out;
  j["report_out"] = report_out;
  j["sweep_omega"] = sweep_omega;
  j["sweep_beam"] = sweep_beam;
  j["omega"] = omega;
  j["space"] = SpaceName(space);
  j["beam"] = beam;
  j["max_steps"] = max_steps;
  j["max_hops"] = max_hops;
  j["strengthen"] = strengthen;
  j["filter"] = filter;
  j["mask_form"] =
      mask_form ? ordered_json(*mask_form) : ordered_json(nullptr);
  j["plus"] = {{"kind", PlusKindName(plus.kind)}, {"k", plus.k},
               {"tau", plus.tau}};
  j["trace_logits_top_k"] = trace_logits_top_k;
  j["lm"] = {{"kind", lm.kind},
             {"seed", lm.seed},
             {"copy_weight", lm.copy_weight},
             {"smoothing", lm.smoothing},
             {"bigram_noise", lm.bigram_noise},
             {"branch_noise", lm.branch_noise},
             {"distractor_bias", lm.distractor_bias}};
  j["embedder"] = {{"kind", embedder.kind},
                   {"dimension", embedder.dimension},
                   {"host", embedder.host},
                   {"port", embedder.port},
                   {"path", embedder.path},
                   {"timeout_ms", embedder.timeout_ms},
                   {"max_attempts", embedder.max_attempts}};
  j["match"] = match == MatchMode::kCaseFold ? "casefold" : "strict";
  j["f1_set"] = f1_set == EvalOptions::F1Set::kAll ? "all" : "top1";
  j["jobs"] = jobs;
  j["synth"] = {{"seed", synth.seed},
                {"num_questions", synth.num_questions},
                {"min_entities", synth.min_entities},
                {"max_entities", synth.max_entities},
                {"max_out_degree", synth.max_out_degree},
                {"max_hops", synth.max_hops}};
  return j;
}

RunConfig RunConfig::FromJson(const json& j) {
  CheckKeys(j, "",
            {"kg", "dataset", "out", "vocab", "template", "trace_out",
             "report_out", "sweep_omega", "sweep_beam", "omega", "space",
             "beam", "max_steps", "max_hops", "strengthen", "filter",
             "mask_form", "plus", "trace_logits_top_k", "lm", "embedder",
             "match", "f1_set", "jobs", "synth"});
  RunConfig c;
  Read(j, "kg", c.kg);
  Read(j, "dataset", c.dataset);
  Read(j, "out", c.out);
  Read(j, "vocab", c.vocab);
  Read(j, "template", c.template_path);
  Read(j, "trace_out", c.trace_out);
  Read(j, "report_out", c.report_out);
  Read(j, "sweep_omega", c.sweep_omega);
  Read(j, "sweep_beam", c.sweep_beam);
  Read(j, "omega", c.omega);
  if (j.contains("space")) {
    std::string s;
    Read(j, "space", s);
    if (s == "logit") {
      c.space = CombineSpace::kLogit;
    } else if (s == "probability") {
      c.space = CombineSpace::kProbability;
    } else {
      Bad("space", "expected 'logit' or 'probability'");
    }
  }
  Read(j, "beam", c.beam);
  if (c.beam == 0) Bad("beam", "must be >= 1");
  Read(j, "max_steps", c.max_steps);
  Read(j, "max_hops", c.max_hops);
  if (c.max_hops < 1) Bad("max_hops", "must be >= 1");
  Read(j, "strengthen", c.strengthen);
  Read(j, "filter", c.filter);
  if (j.contains("mask_form")) {
    if (j["mask_form"].is_null()) {
      c.mask_form.reset();
    } else {
      std::string m;
      Read(j, "mask_form", m);
      if (m.empty()) Bad("mask_form", "must be non-empty (null disables)");
      c.mask_form = m;
    }
  }
  if (j.contains("plus")) {
    const json& p = j["plus"];
    CheckKeys(p, "plus", {"kind", "k", "tau"});
    std::string kind = PlusKindName(c.plus.kind);
    Read(p, "kind", kind, "plus");
    if (kind == "top1") {
      c.plus.kind = PlusPolicy::Kind::kTop1;
    } else if (kind == "topk") {
      c.plus.kind = PlusPolicy::Kind::kTopK;
    } else if (kind == "threshold") {
      c.plus.kind = PlusPolicy::Kind::kThreshold;
    } else {
      Bad("plus.kind", "expected 'top1', 'topk' or 'threshold'");
    }
    Read(p, "k", c.plus.k, "plus");
    Read(p, "tau", c.plus.tau, "plus");
  }
  Read(j, "trace_logits_top_k", c.trace_logits_top_k);
  if (j.contains("lm")) {
    const json& l = j["lm"];
    CheckKeys(l, "lm",
              {"kind", "seed", "copy_weight", "smoothing", "bigram_noise",
               "branch_noise", "distractor_bias"});
    Read(l, "kind", c.lm.kind, "lm");
    if (c.lm.kind != "toy" && c.lm.kind != "adversarial") {
      Bad("lm.kind", "expected 'toy' or 'adversarial'");
    }
    Read(l, "seed", c.lm.seed, "lm");
    Read(l, "copy_weight", c.lm.copy_weight, "lm");
    Read(l, "smoothing", c.lm.smoothing, "lm");
    if (c.lm.smoothing <= 0.0) Bad("lm.smoothing", "must be > 0");
    Read(l, "bigram_noise", c.lm.bigram_noise, "lm");
    Read(l, "branch_noise", c.lm.branch_noise, "lm");
    Read(l, "distractor_bias", c.lm.distractor_bias, "lm");
  }
  if (j.contains("embedder")) {
    const json& e = j["embedder"];
    CheckKeys(e, "embedder",
              {"kind", "dimension", "host", "port", "path", "timeout_ms",
               "max_attempts"});
    Read(e, "kind", c.embedder.kind, "embedder");
    if (c.embedder.kind != "reference" && c.embedder.kind != "http") {
      Bad("embedder.kind", "expected 'reference' or 'http'");
    }
    Read(e, "dimension", c.embedder.dimension, "embedder");
    if (c.embedder.dimension == 0) Bad("embedder.dimension", "must be >= 1");
    Read(e, "host", c.embedder.host, "embedder");
    Read(e, "port", c.embedder.port, "embedder");
    Read(e, "path", c.embedder.path, "embedder");
    Read(e, "timeout_ms", c.embedder.timeout_ms, "embedder");
    Read(e, "max_attempts", c.embedder.max_attempts, "embedder");
    if (c.embedder.max_attempts < 1) Bad("embedder.max_attempts", "must be >= 1");
  }
  if (j.contains("match")) {
    std::string m;
    Read(j, "match", m);
    if (m == "casefold") {
      c.match = MatchMode::kCaseFold;
    } else if (m == "strict") {
      c.match = MatchMode::kStrict;
    } else {
      Bad("match", "expected 'casefold' or 'strict'");
    }
  }
  if (j.contains("f1_set")) {
    std::string f;
    Read(j, "f1_set", f);
    if (f == "all") {
      c.f1_set = EvalOptions::F1Set::kAll;
    } else if (f == "top1") {
      c.f1_set = EvalOptions::F1Set::kTop1;
    } else {
      Bad("f1_set", "expected 'all' or 'top1'");
    }
  }
  Read(j, "jobs", c.jobs);
  if (c.jobs == 0) Bad("jobs", "must be >= 1");
  if (j.contains("synth")) {
    const json& s = j["synth"];
    CheckKeys(s, "synth",
              {"seed", "num_questions", "min_entities", "max_entities",
               "max_out_degree", "max_hops"});
    Read(s, "seed", c.synth.seed, "synth");
    Read(s, "num_questions", c.synth.num_questions, "synth");
    Read(s, "min_entities", c.synth.min_entities, "synth");
    Read(s, "max_entities", c.synth.max_entities, "synth");
    Read(s, "max_out_degree", c.synth.max_out_degree, "synth");
    Read(s, "max_hops", c.synth.max_hops, "synth");
  }
  return c;
}

bool RunConfig::operator==(const RunConfig& other) const {
  return ToJson() == other.ToJson();
}

json MergeConfig(json base, const json& overlay) {
  if (!base.is_object() || !overlay.is_object()) return overlay;
  for (const auto& [k, v] : overlay.items()) {
    if (base.contains(k) && base[k].is_object() && v.is_object()) {
      base[k] = MergeConfig(base[k], v);
    } else {
      base[k] = v;
    }
  }
  return base;
}

RunConfig ResolveConfig(const std::string& file_text, const json& overrides) {
  json base = json::object();
  if (!file_text.empty()) {
    base = json::parse(file_text, nullptr, false);
    if (base.is_discarded()) {
      throw Error(ErrorCode::kConfig, "config file is not valid JSON");
    }
    if (!base.is_object()) {
      throw Error(ErrorCode::kConfig, "config file must hold a JSON object");
    }
  }
  if (!overrides.is_null() && !overrides.is_object()) {
    throw Error(ErrorCode::kConfig, "overrides must be a JSON object");
  }
  return RunConfig::FromJson(
      overrides.is_null() ? base : MergeConfig(std::move(base), overrides));
}

}  // namespace kgd
