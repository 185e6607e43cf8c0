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

// C interface to the kgdecode engine.
//
// All functions report failures through kgd_status; a human readable message
// for the last failure on the calling thread is available from
// kgd_last_error(). Objects are opaque handles released with their _free
// function. Strings and id arrays returned through out-parameters are owned
// by the caller and released with kgd_string_free / kgd_ids_free.

#ifndef KGDECODE_KGDECODE_H_
#define KGDECODE_KGDECODE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KGD_API __declspec(dllexport)
#else
#define KGD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgd_status {
  KGD_OK = 0,
  KGD_ERR_INVALID_ARGUMENT = 1,
  KGD_ERR_PARSE = 2,
  KGD_ERR_LOOKUP = 3,
  KGD_ERR_ENCODING = 4,
  KGD_ERR_COMPILE = 5,
  KGD_ERR_DEAD_STATE = 6,
  KGD_ERR_SHAPE = 7,
  KGD_ERR_NUMERIC = 8,
  KGD_ERR_TEMPLATE = 9,
  KGD_ERR_DATASET = 10,
  KGD_ERR_EXHAUSTED = 11,
  KGD_ERR_PROVIDER = 12,
  KGD_ERR_IO = 13,
  KGD_ERR_CONFIG = 14,
  KGD_ERR_PROTOCOL = 15,
  KGD_ERR_DEAD_END = 16,
  KGD_ERR_INTERNAL = 99,
} kgd_status;

// Value written for disallowed entries by kgd_filter and kgd_step_logits:
// the most negative finite double.
#define KGD_DISALLOWED (-1.7976931348623157e308)

enum { KGD_SPACE_LOGIT = 0, KGD_SPACE_PROBABILITY = 1 };

KGD_API const char* kgd_version(void);
// Stable short name, e.g. "parse" or "dead-state".
KGD_API const char* kgd_status_string(kgd_status status);
// Message of the last failed call on this thread; "" if none.
KGD_API const char* kgd_last_error(void);

KGD_API void kgd_string_free(char* s);
KGD_API void kgd_ids_free(int32_t* ids);

// ---- knowledge graph ----

typedef struct kgd_graph kgd_graph;

// Tab separated head, relation, tail per line; '#' lines ignored.
KGD_API kgd_status kgd_graph_load(const char* path, kgd_graph** out);
KGD_API kgd_status kgd_graph_parse(const char* data, size_t len,
                                   kgd_graph** out);
KGD_API void kgd_graph_free(kgd_graph* g);
KGD_API size_t kgd_graph_num_entities(const kgd_graph* g);
KGD_API size_t kgd_graph_num_relations(const kgd_graph* g);
KGD_API size_t kgd_graph_num_triples(const kgd_graph* g);
// Sorted, de-duplicated triples file.
KGD_API kgd_status kgd_graph_write(const kgd_graph* g, const char* path);
// JSON array of textualized paths from `topic`, in extraction order.
KGD_API kgd_status kgd_graph_extract_paths(const kgd_graph* g,
                                           const char* topic, int max_hops,
                                           char** out_json);

// ---- tokenizer ----

typedef struct kgd_tokenizer kgd_tokenizer;

KGD_API kgd_status kgd_tokenizer_reference(kgd_tokenizer** out);
KGD_API kgd_status kgd_tokenizer_load(const char* vocab_path,
                                      kgd_tokenizer** out);
KGD_API void kgd_tokenizer_free(kgd_tokenizer* t);
KGD_API size_t kgd_tokenizer_size(const kgd_tokenizer* t);
KGD_API void kgd_tokenizer_reserved(const kgd_tokenizer* t, int32_t* bos,
                                    int32_t* eos, int32_t* mask);
KGD_API kgd_status kgd_encode(const kgd_tokenizer* t, const char* text,
                              size_t len, int32_t** out_ids, size_t* out_len);
KGD_API kgd_status kgd_decode(const kgd_tokenizer* t, const int32_t* ids,
                              size_t n, int strip_special, char** out);

// ---- automaton ----

typedef struct kgd_automaton kgd_automaton;

KGD_API kgd_status kgd_automaton_compile(const kgd_tokenizer* t,
                                         const char* const* paths, size_t n,
                                         kgd_automaton** out);
KGD_API kgd_status kgd_automaton_load(const char* path, kgd_automaton** out);
KGD_API kgd_status kgd_automaton_save(const kgd_automaton* a,
                                      const char* path);
KGD_API void kgd_automaton_free(kgd_automaton* a);
KGD_API size_t kgd_automaton_num_states(const kgd_automaton* a);
KGD_API size_t kgd_automaton_vocab_size(const kgd_automaton* a);
KGD_API uint32_t kgd_automaton_root(const kgd_automaton* a);
KGD_API int kgd_automaton_is_accepting(const kgd_automaton* a,
                                       uint32_t state);
// KGD_ERR_DEAD_STATE when `token` has no transition.
KGD_API kgd_status kgd_automaton_step(const kgd_automaton* a, uint32_t state,
                                      int32_t token, uint32_t* next);
// Sorted allowed ids; EOS included at accepting states.
KGD_API kgd_status kgd_automaton_allowed(const kgd_automaton* a,
                                         uint32_t state, int32_t** out_ids,
                                         size_t* out_len);
// `out` must hold vocab_size bytes.
KGD_API kgd_status kgd_automaton_mask(const kgd_automaton* a, uint32_t state,
                                      uint8_t* out, size_t len);

// ---- logits pipeline ----

KGD_API kgd_status kgd_strengthen(const double* main, const double* mask,
                                  size_t n, double omega, int space,
                                  double* out);
KGD_API kgd_status kgd_filter(const kgd_automaton* a, uint32_t state,
                              const double* z, size_t n, double* out);
// filter(strengthen(main, mask)) with ablation switches.
KGD_API kgd_status kgd_step_logits(const kgd_automaton* a, uint32_t state,
                                   const double* main, const double* mask,
                                   size_t n, double omega, int space,
                                   int strengthen, int filter, double* out);
KGD_API kgd_status kgd_softmax(const double* z, size_t n, double* out);

// ---- batch runs ----

typedef struct kgd_run_summary {
  size_t total;
  size_t failed;
  double hit1;
  double f1;
  size_t triples;
} kgd_run_summary;

// Run configuration as JSON: `file_json` (may be NULL) overlaid with
// `overrides_json` (may be NULL), validated, and written out in full.
KGD_API kgd_status kgd_config_resolve(const char* file_json,
                                      const char* overrides_json,
                                      char** out_json);
KGD_API kgd_status kgd_run_decode(const char* config_json, char** out_jsonl,
                                  kgd_run_summary* summary);
KGD_API kgd_status kgd_run_eval(const char* config_json, char** out_report,
                                kgd_run_summary* summary);
KGD_API kgd_status kgd_run_synth(const char* config_json,
                                 kgd_run_summary* summary);

// ---- sidecar ----

typedef struct kgd_sidecar kgd_sidecar;

// options_json: {"vocab": path, "graphs": {name: triples_path},
// "max_hops": int, "embedder": {...}, "plus": {...}}; every key optional.
KGD_API kgd_status kgd_sidecar_create(const char* options_json,
                                      kgd_sidecar** out);
KGD_API void kgd_sidecar_free(kgd_sidecar* s);
// One request frame in, one response frame out (no trailing newline).
KGD_API kgd_status kgd_sidecar_handle(kgd_sidecar* s, const char* frame,
                                      size_t len, char** out_response);
KGD_API size_t kgd_sidecar_session_count(const kgd_sidecar* s);
// Port 0 binds an ephemeral port; the bound port is stored in *bound_port.
KGD_API kgd_status kgd_sidecar_start_tcp(kgd_sidecar* s, const char* host,
                                         int port, int* bound_port);
KGD_API kgd_status kgd_sidecar_stop(kgd_sidecar* s);
// Blocks serving frames from in_fd to out_fd until EOF on in_fd.
KGD_API kgd_status kgd_sidecar_serve_fd(kgd_sidecar* s, int in_fd,
                                        int out_fd);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // KGDECODE_KGDECODE_H_
