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

#include "kgdecode/kgdecode.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "core/automaton.h"
#include "core/error.h"
#include "core/kg_store.h"
#include "core/logits.h"
#include "core/run.h"
#include "core/run_config.h"
#include "core/sidecar.h"
#include "core/sidecar_server.h"
#include "core/tokenizer.h"
#include "json.hpp"

struct kgd_graph {
  kgd::KnowledgeGraph g;
};

struct kgd_tokenizer {
  std::shared_ptr<const kgd::Tokenizer> t;
};

struct kgd_automaton {
  kgd::TokenAutomaton a;
};

struct kgd_sidecar {
  std::unique_ptr<kgd::SidecarService> service;
  std::unique_ptr<kgd::SidecarServer> server;
};

namespace {

thread_local std::string g_last_error;

kgd_status Record(kgd_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, mapping exceptions to status codes.
template <typename Fn>
kgd_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return KGD_OK;
  } catch (const kgd::Error& e) {
    return Record(static_cast<kgd_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Record(KGD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Record(KGD_ERR_INTERNAL, e.what());
  } catch (...) {
    return Record(KGD_ERR_INTERNAL, "unknown failure");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw kgd::Error(kgd::ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

int32_t* CopyIds(const std::vector<kgd::TokenId>& ids) {
  auto* out = static_cast<int32_t*>(
      std::malloc(std::max<std::size_t>(ids.size(), 1) * sizeof(int32_t)));
  if (!out) throw std::bad_alloc();
  if (!ids.empty()) std::memcpy(out, ids.data(), ids.size() * sizeof(int32_t));
  return out;
}

kgd::CombineSpace SpaceOf(int space) {
  if (space == KGD_SPACE_LOGIT) return kgd::CombineSpace::kLogit;
  if (space == KGD_SPACE_PROBABILITY) return kgd::CombineSpace::kProbability;
  throw kgd::Error(kgd::ErrorCode::kInvalidArgument, "unknown combine space");
}

kgd::RunConfig ParseConfig(const char* config_json) {
  Require(config_json != nullptr, "config_json is null");
  return kgd::ResolveConfig(config_json, nullptr);
}

}  // namespace

extern "C" {

const char* kgd_version(void) { return "0.1.0"; }

const char* kgd_status_string(kgd_status status) {
  if (status == KGD_OK) return "ok";
  return kgd::ErrorCodeName(static_cast<kgd::ErrorCode>(status));
}

const char* kgd_last_error(void) { return g_last_error.c_str(); }

void kgd_string_free(char* s) { std::free(s); }
void kgd_ids_free(int32_t* ids) { std::free(ids); }

kgd_status kgd_graph_load(const char* path, kgd_graph** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new kgd_graph{kgd::LoadTriplesFile(path)};
  });
}

kgd_status kgd_graph_parse(const char* data, size_t len, kgd_graph** out) {
  return Guard([&] {
    Require((data || len == 0) && out, "null argument");
    *out = new kgd_graph{kgd::ParseTriples(std::string_view(data ? data : "", len))};
  });
}

void kgd_graph_free(kgd_graph* g) { delete g; }

size_t kgd_graph_num_entities(const kgd_graph* g) {
  return g ? g->g.entities().size() : 0;
}
size_t kgd_graph_num_relations(const kgd_graph* g) {
  return g ? g->g.relations().size() : 0;
}
size_t kgd_graph_num_triples(const kgd_graph* g) {
  return g ? g->g.triples().size() : 0;
}

kgd_status kgd_graph_write(const kgd_graph* g, const char* path) {
  return Guard([&] {
    Require(g && path, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kgd::Error(kgd::ErrorCode::kIo, std::string("cannot write ") + path);
    kgd::WriteTriples(g->g, out);
    if (!out) throw kgd::Error(kgd::ErrorCode::kIo, std::string("write failed: ") + path);
  });
}

kgd_status kgd_graph_extract_paths(const kgd_graph* g, const char* topic,
                                   int max_hops, char** out_json) {
  return Guard([&] {
    Require(g && topic && out_json, "null argument");
    nlohmann::json arr = nlohmann::json::array();
    for (const kgd::Path& p : kgd::ExtractPaths(g->g, topic, max_hops)) {
      arr.push_back(kgd::Textualize(p));
    }
    *out_json = CopyString(arr.dump());
  });
}

kgd_status kgd_tokenizer_reference(kgd_tokenizer** out) {
  return Guard([&] {
    Require(out, "null argument");
    *out = new kgd_tokenizer{kgd::ReferenceTokenizer()};
  });
}

kgd_status kgd_tokenizer_load(const char* vocab_path, kgd_tokenizer** out) {
  return Guard([&] {
    Require(vocab_path && out, "null argument");
    *out = new kgd_tokenizer{std::make_shared<const kgd::GreedyTokenizer>(
        std::make_shared<const kgd::Vocabulary>(
            kgd::LoadVocabularyFile(vocab_path)))};
  });
}

void kgd_tokenizer_free(kgd_tokenizer* t) { delete t; }

size_t kgd_tokenizer_size(const kgd_tokenizer* t) {
  return t ? t->t->size() : 0;
}

void kgd_tokenizer_reserved(const kgd_tokenizer* t, int32_t* bos,
                            int32_t* eos, int32_t* mask) {
  if (!t) return;
  const kgd::ReservedIds r = t->t->reserved();
  if (bos) *bos = r.bos;
  if (eos) *eos = r.eos;
  if (mask) *mask = r.mask;
}

kgd_status kgd_encode(const kgd_tokenizer* t, const char* text, size_t len,
                      int32_t** out_ids, size_t* out_len) {
  return Guard([&] {
    Require(t && (text || len == 0) && out_ids && out_len, "null argument");
    const kgd::TokenSequence ids =
        t->t->Encode(std::string_view(text ? text : "", len));
    *out_ids = CopyIds(ids);
    *out_len = ids.size();
  });
}

kgd_status kgd_decode(const kgd_tokenizer* t, const int32_t* ids, size_t n,
                      int strip_special, char** out) {
  return Guard([&] {
    Require(t && (ids || n == 0) && out, "null argument");
    *out = CopyString(t->t->Decode(std::span<const int32_t>(ids, n),
                                   strip_special != 0));
  });
}

kgd_status kgd_automaton_compile(const kgd_tokenizer* t,
                                 const char* const* paths, size_t n,
                                 kgd_automaton** out) {
  return Guard([&] {
    Require(t && (paths || n == 0) && out, "null argument");
    std::vector<std::string> texts;
    for (size_t i = 0; i < n; ++i) {
      Require(paths[i] != nullptr, "null path");
      texts.emplace_back(paths[i]);
    }
    *out = new kgd_automaton{kgd::TokenAutomaton::Compile(*t->t, texts)};
  });
}

kgd_status kgd_automaton_load(const char* path, kgd_automaton** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw kgd::Error(kgd::ErrorCode::kIo, std::string("cannot read ") + path);
    *out = new kgd_automaton{kgd::TokenAutomaton::Load(in)};
  });
}

kgd_status kgd_automaton_save(const kgd_automaton* a, const char* path) {
  return Guard([&] {
    Require(a && path, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kgd::Error(kgd::ErrorCode::kIo, std::string("cannot write ") + path);
    a->a.Save(out);
    if (!out) throw kgd::Error(kgd::ErrorCode::kIo, std::string("write failed: ") + path);
  });
}

void kgd_automaton_free(kgd_automaton* a) { delete a; }

size_t kgd_automaton_num_states(const kgd_automaton* a) {
  return a ? a->a.num_states() : 0;
}
size_t kgd_automaton_vocab_size(const kgd_automaton* a) {
  return a ? a->a.vocab_size() : 0;
}
uint32_t kgd_automaton_root(const kgd_automaton* a) {
  return a ? a->a.root() : 0;
}

int kgd_automaton_is_accepting(const kgd_automaton* a, uint32_t state) {
  if (!a || state >= a->a.num_states()) return 0;
  return a->a.IsAccepting(state) ? 1 : 0;
}

kgd_status kgd_automaton_step(const kgd_automaton* a, uint32_t state,
                              int32_t token, uint32_t* next) {
  return Guard([&] {
    Require(a && next, "null argument");
    *next = a->a.Step(state, token);
  });
}

kgd_status kgd_automaton_allowed(const kgd_automaton* a, uint32_t state,
                                 int32_t** out_ids, size_t* out_len) {
  return Guard([&] {
    Require(a && out_ids && out_len, "null argument");
    const std::vector<kgd::TokenId> ids = a->a.AllowedTokens(state);
    *out_ids = CopyIds(ids);
    *out_len = ids.size();
  });
}

kgd_status kgd_automaton_mask(const kgd_automaton* a, uint32_t state,
                              uint8_t* out, size_t len) {
  return Guard([&] {
    Require(a && out, "null argument");
    if (len != a->a.vocab_size()) {
      throw kgd::Error(kgd::ErrorCode::kShape, "mask buffer length != vocab size");
    }
    const std::vector<std::uint8_t> mask = a->a.MaskVector(state);
    std::memcpy(out, mask.data(), len);
  });
}

kgd_status kgd_strengthen(const double* main, const double* mask, size_t n,
                          double omega, int space, double* out) {
  return Guard([&] {
    Require(main && mask && out, "null argument");
    const kgd::LogitsVector z = kgd::Strengthen(
        {{main, main + n}, kgd::LogitsStage::kRawMain},
        {{mask, mask + n}, kgd::LogitsStage::kRawMask}, omega, SpaceOf(space));
    std::copy(z.values.begin(), z.values.end(), out);
  });
}

kgd_status kgd_filter(const kgd_automaton* a, uint32_t state, const double* z,
                      size_t n, double* out) {
  return Guard([&] {
    Require(a && z && out, "null argument");
    const kgd::LogitsVector f = kgd::Filter(
        {{z, z + n}, kgd::LogitsStage::kStrengthened}, a->a, state);
    std::copy(f.values.begin(), f.values.end(), out);
  });
}

kgd_status kgd_step_logits(const kgd_automaton* a, uint32_t state,
                           const double* main, const double* mask, size_t n,
                           double omega, int space, int strengthen,
                           int filter, double* out) {
  return Guard([&] {
    Require(main && out && (mask || !strengthen) && (a || !filter),
            "null argument");
    kgd::PipelineConfig cfg;
    cfg.omega = omega;
    cfg.space = SpaceOf(space);
    cfg.strengthen = strengthen != 0;
    cfg.filter = filter != 0;
    kgd::LogitsVector m{{main, main + n}, kgd::LogitsStage::kRawMain};
    kgd::LogitsVector k{mask ? std::vector<double>(mask, mask + n)
                             : std::vector<double>(),
                        kgd::LogitsStage::kRawMask};
    const kgd::LogitsVector z =
        kgd::StepLogits(m, k, cfg, a ? &a->a : nullptr, state);
    std::copy(z.values.begin(), z.values.end(), out);
  });
}

kgd_status kgd_softmax(const double* z, size_t n, double* out) {
  return Guard([&] {
    Require(z && out, "null argument");
    const std::vector<double> p = kgd::Softmax(std::span<const double>(z, n));
    std::copy(p.begin(), p.end(), out);
  });
}

kgd_status kgd_config_resolve(const char* file_json,
                              const char* overrides_json, char** out_json) {
  return Guard([&] {
    Require(out_json, "null argument");
    nlohmann::json overrides = nullptr;
    if (overrides_json) {
      overrides = nlohmann::json::parse(overrides_json, nullptr, false);
      if (overrides.is_discarded()) {
        throw kgd::Error(kgd::ErrorCode::kConfig, "overrides are not valid JSON");
      }
    }
    const kgd::RunConfig cfg =
        kgd::ResolveConfig(file_json ? file_json : "", overrides);
    *out_json = CopyString(cfg.ToJson().dump(2));
  });
}

kgd_status kgd_run_decode(const char* config_json, char** out_jsonl,
                          kgd_run_summary* summary) {
  return Guard([&] {
    const kgd::DecodeSummary s = kgd::RunDecode(ParseConfig(config_json));
    if (summary) *summary = {s.total, s.failed, 0.0, 0.0, 0};
    if (out_jsonl) *out_jsonl = CopyString(s.jsonl);
  });
}

kgd_status kgd_run_eval(const char* config_json, char** out_report,
                        kgd_run_summary* summary) {
  return Guard([&] {
    const kgd::EvalSummary s = kgd::RunEvalCommand(ParseConfig(config_json));
    if (summary) *summary = {s.total, s.failed, s.hit1, s.f1, 0};
    if (out_report) *out_report = CopyString(s.report_json);
  });
}

kgd_status kgd_run_synth(const char* config_json, kgd_run_summary* summary) {
  return Guard([&] {
    const kgd::SynthSummary s = kgd::RunSynth(ParseConfig(config_json));
    if (summary) *summary = {s.questions, 0, 0.0, 0.0, s.triples};
  });
}

kgd_status kgd_sidecar_create(const char* options_json, kgd_sidecar** out) {
  return Guard([&] {
    Require(out, "null argument");
    nlohmann::json j = nlohmann::json::object();
    if (options_json && *options_json) {
      j = nlohmann::json::parse(options_json, nullptr, false);
      if (j.is_discarded()) {
        throw kgd::Error(kgd::ErrorCode::kConfig, "sidecar options are not valid JSON");
      }
    }
    auto s = std::make_unique<kgd_sidecar>();
    s->service = std::make_unique<kgd::SidecarService>(kgd::MakeSidecarOptions(j));
    *out = s.release();
  });
}

void kgd_sidecar_free(kgd_sidecar* s) {
  if (!s) return;
  if (s->server) s->server->Stop();
  delete s;
}

kgd_status kgd_sidecar_handle(kgd_sidecar* s, const char* frame, size_t len,
                              char** out_response) {
  return Guard([&] {
    Require(s && (frame || len == 0) && out_response, "null argument");
    *out_response = CopyString(
        s->service->HandleFrame(std::string_view(frame ? frame : "", len)));
  });
}

size_t kgd_sidecar_session_count(const kgd_sidecar* s) {
  return s ? s->service->session_count() : 0;
}

kgd_status kgd_sidecar_start_tcp(kgd_sidecar* s, const char* host, int port,
                                 int* bound_port) {
  return Guard([&] {
    Require(s && host, "null argument");
    if (!s->server) s->server = std::make_unique<kgd::SidecarServer>(*s->service);
    const int p = s->server->Start(host, port);
    if (bound_port) *bound_port = p;
  });
}

kgd_status kgd_sidecar_stop(kgd_sidecar* s) {
  return Guard([&] {
    Require(s != nullptr, "null argument");
    if (s->server) s->server->Stop();
  });
}

kgd_status kgd_sidecar_serve_fd(kgd_sidecar* s, int in_fd, int out_fd) {
  return Guard([&] {
    Require(s && in_fd >= 0 && out_fd >= 0, "bad argument");
    kgd::ServeStream(*s->service, in_fd, out_fd);
  });
}

}  // extern "C"
