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

#include "core/sidecar.h"

#include <cmath>

#include "core/error.h"

namespace kgd {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Protocol-level failure with a stable wire code.
struct ProtocolError {
  std::string code;
  std::string message;
};

[[noreturn]] void Fail(std::string code, std::string message) {
  throw ProtocolError{std::move(code), std::move(message)};
}

const json& Field(const json& req, const char* key) {
  auto it = req.find(key);
  if (it == req.end()) Fail("bad-request", std::string("missing '") + key + "'");
  return *it;
}

std::string StringField(const json& req, const char* key) {
  const json& v = Field(req, key);
  if (!v.is_string()) {
    Fail("bad-request", std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<std::string> StringList(const json& v, const char* key) {
  if (!v.is_array()) {
    Fail("bad-request", std::string("'") + key + "' must be an array");
  }
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string()) {
      Fail("bad-request", std::string("'") + key + "' must hold strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

LogitsVector LogitsField(const json& req, const char* key, std::size_t vocab,
                         LogitsStage stage) {
  const json& v = Field(req, key);
  if (!v.is_array()) {
    Fail("bad-request", std::string("'") + key + "' must be an array");
  }
  if (v.size() != vocab) {
    Fail("length-mismatch", std::string("'") + key + "' has " +
                                std::to_string(v.size()) +
                                " entries, vocab_size is " +
                                std::to_string(vocab));
  }
  LogitsVector out;
  out.stage = stage;
  out.values.reserve(vocab);
  for (const json& e : v) {
    if (!e.is_number()) {
      Fail("bad-request", std::string("'") + key + "' must hold numbers");
    }
    const double x = e.get<double>();
    if (!std::isfinite(x)) {
      Fail("bad-request", std::string("'") + key + "' must be finite");
    }
    out.values.push_back(x);
  }
  return out;
}

}  // namespace

SidecarService::SidecarService(SidecarOptions options)
    : options_(std::move(options)) {
  if (!options_.tokenizer || !options_.embedder) {
    throw Error(ErrorCode::kInvalidArgument,
                "sidecar needs a tokenizer and an embedder");
  }
}

std::size_t SidecarService::session_count() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

std::shared_ptr<SidecarService::Session> SidecarService::Find(
    const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::string SidecarService::HandleFrame(std::string_view frame) {
  json req = json::parse(frame, nullptr, false);
  if (req.is_discarded()) {
    ordered_json resp;
    resp["seq"] = nullptr;
    resp["session_id"] = nullptr;
    resp["ok"] = false;
    resp["error"] = {{"code", "bad-request"},
                     {"message", "frame is not valid JSON"}};
    return resp.dump();
  }
  return Handle(req).dump();
}

ordered_json SidecarService::Handle(const json& req) {
  ordered_json head;
  head["seq"] = nullptr;
  head["session_id"] = nullptr;
  try {
    if (!req.is_object()) Fail("bad-request", "frame must be a JSON object");
    if (auto it = req.find("seq"); it != req.end()) {
      if (!it->is_number_integer()) Fail("bad-request", "'seq' must be an integer");
      head["seq"] = *it;
    }
    if (auto it = req.find("session_id"); it != req.end() && it->is_string()) {
      head["session_id"] = *it;
    }
    const std::string op = StringField(req, "op");
    ordered_json body;
    if (op == "init") {
      body = Init(req);
    } else if (op == "step") {
      body = Step(req);
    } else if (op == "advance") {
      body = Advance(req);
    } else if (op == "close") {
      body = Close(req);
    } else {
      Fail("bad-request", "unknown op '" + op + "'");
    }
    ordered_json resp = head;
    resp["ok"] = true;
    for (auto& [k, v] : body.items()) resp[k] = std::move(v);
    return resp;
  } catch (const ProtocolError& e) {
    head["ok"] = false;
    head["error"] = {{"code", e.code}, {"message", e.message}};
  } catch (const Error& e) {
    head["ok"] = false;
    head["error"] = {{"code", ErrorCodeName(e.code())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    head["ok"] = false;
    head["error"] = {{"code", "internal"}, {"message", e.what()}};
  }
  return head;
}

ordered_json SidecarService::Init(const json& req) {
  const std::string id = StringField(req, "session_id");
  if (id.empty()) Fail("bad-request", "'session_id' must be non-empty");
  const std::string question = StringField(req, "question");
  if (question.empty()) Fail("bad-request", "'question' must be non-empty");
  PipelineConfig pcfg;
  if (auto it = req.find("omega"); it != req.end()) {
    if (!it->is_number() || !std::isfinite(it->get<double>())) {
      Fail("bad-request", "'omega' must be a finite number");
    }
    pcfg.omega = it->get<double>();
  }
  if (auto it = req.find("space"); it != req.end()) {
    const std::string s = it->is_string() ? it->get<std::string>() : "";
    if (s == "logit") {
      pcfg.space = CombineSpace::kLogit;
    } else if (s == "probability") {
      pcfg.space = CombineSpace::kProbability;
    } else {
      Fail("bad-request", "'space' must be 'logit' or 'probability'");
    }
  }
  const bool has_paths = req.contains("paths");
  const bool has_kg = req.contains("kg_ref");
  if (has_paths == has_kg) {
    Fail("bad-request", "exactly one of 'paths' and 'kg_ref' is required");
  }
  std::vector<std::string> topics;
  if (req.contains("topic_entities")) {
    topics = StringList(req["topic_entities"], "topic_entities");
  }
  std::vector<std::string> texts;
  if (has_paths) {
    texts = StringList(req["paths"], "paths");
  } else {
    const std::string ref = StringField(req, "kg_ref");
    auto g = options_.graphs.find(ref);
    if (g == options_.graphs.end()) Fail("unknown-kg", "no graph named '" + ref + "'");
    if (topics.empty()) {
      Fail("bad-request", "'topic_entities' is required with 'kg_ref'");
    }
    std::unordered_set<std::string> seen;
    for (const std::string& topic : topics) {
      if (!g->second->HasEntity(topic)) {
        Fail("unknown-entity", "entity '" + topic + "' is not in '" + ref + "'");
      }
      for (const Path& p : ExtractPaths(*g->second, topic, options_.max_hops)) {
        std::string t = Textualize(p);
        if (seen.insert(t).second) texts.push_back(std::move(t));
      }
    }
  }
  if (texts.empty()) Fail("empty-paths", "no reasoning paths to compile");

  auto session = std::make_shared<Session>();
  session->pipeline = pcfg;
  ScoredPathSet scored;
  try {
    session->automaton = std::make_shared<const TokenAutomaton>(
        TokenAutomaton::Compile(*options_.tokenizer, texts));
    scored = ScorePaths(*options_.embedder, question, texts, options_.plus);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCompile) Fail("compile-error", e.what());
    throw;
  }
  session->state = session->automaton->root();
  {
    std::unique_lock lock(mu_);
    if (sessions_.count(id)) Fail("session-exists", "session '" + id + "' exists");
    if (sessions_.size() >= options_.max_sessions) {
      Fail("too-many-sessions", "session table is full");
    }
    sessions_.emplace(id, session);
  }
  ordered_json out;
  out["protocol"] = kProtocolVersion;
  out["vocab_size"] = session->automaton->vocab_size();
  out["eos_id"] = options_.tokenizer->reserved().eos;
  out["num_paths"] = session->automaton->accepted_paths().size();
  out["top1_path"] = scored.entries[scored.top1].text;
  ordered_json plus = ordered_json::array();
  for (std::size_t i : scored.plus) plus.push_back(scored.entries[i].text);
  out["plus_paths"] = std::move(plus);
  return out;
}

ordered_json SidecarService::Step(const json& req) {
  const std::string id = StringField(req, "session_id");
  auto s = Find(id);
  if (!s) Fail("dead-session", "session '" + id + "' is not open");
  std::lock_guard lock(s->mu);
  if (s->finished) Fail("session-finished", "session '" + id + "' has finished");
  const std::size_t vocab = s->automaton->vocab_size();
  const LogitsVector main =
      LogitsField(req, "logits_main", vocab, LogitsStage::kRawMain);
  const LogitsVector mask =
      LogitsField(req, "logits_mask", vocab, LogitsStage::kRawMask);
  const LogitsVector z =
      StepLogits(main, mask, s->pipeline, s->automaton.get(), s->state);
  ordered_json logits = ordered_json::array();
  for (double v : z.values) {
    logits.push_back(v == kDisallowed ? ordered_json(nullptr) : ordered_json(v));
  }
  ordered_json out;
  out["logits"] = std::move(logits);
  out["allowed_count"] = s->automaton->AllowedCount(s->state);
  out["accepting"] = s->automaton->IsAccepting(s->state);
  return out;
}

ordered_json SidecarService::Advance(const json& req) {
  const std::string id = StringField(req, "session_id");
  const json& tok = Field(req, "token_id");
  if (!tok.is_number_integer()) Fail("bad-request", "'token_id' must be an integer");
  auto s = Find(id);
  if (!s) Fail("dead-session", "session '" + id + "' is not open");
  std::lock_guard lock(s->mu);
  if (s->finished) Fail("session-finished", "session '" + id + "' has finished");
  const long long t = tok.get<long long>();
  if (t < 0 || static_cast<std::size_t>(t) >= s->automaton->vocab_size() ||
      !s->automaton->IsAllowed(s->state, static_cast<TokenId>(t))) {
    Fail("illegal-token", "token " + std::to_string(t) +
                              " is not allowed in the current state");
  }
  const auto token = static_cast<TokenId>(t);
  if (token == s->automaton->eos()) {
    s->finished = true;
  } else {
    s->state = s->automaton->Step(s->state, token);
  }
  ordered_json out;
  out["accepting"] = s->automaton->IsAccepting(s->state);
  out["finished"] = s->finished;
  return out;
}

ordered_json SidecarService::Close(const json& req) {
  const std::string id = StringField(req, "session_id");
  std::unique_lock lock(mu_);
  if (sessions_.erase(id) == 0) {
    Fail("unknown-session", "session '" + id + "' is not open");
  }
  return ordered_json::object();
}

}  // namespace kgd
