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

// kgd: command line driver. Talks to the engine only through the C API.

#include <signal.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgdecode/kgdecode.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAllFailed = 1;
constexpr int kExitConfig = 2;

using nlohmann::json;

int Fail(kgd_status status) {
  std::cerr << "error: " << kgd_status_string(status) << ": "
            << kgd_last_error() << "\n";
  return kExitConfig;
}

bool ReadText(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Options shared by decode, eval and synth. Only flags given on the
// command line become overrides; everything else comes from --config or the
// built-in defaults.
struct RunFlags {
  std::string config;
  bool print_config = false;
  json overrides = json::object();
  std::vector<std::function<void()>> collect;

  template <typename T>
  CLI::Option* Add(CLI::App* app, const std::string& flag, const std::string& key,
           T& storage, const std::string& help) {
    CLI::Option* opt = app->add_option(flag, storage, help)->capture_default_str();
    collect.push_back([this, opt, key, &storage] {
      if (opt->count() == 0) return;
      const auto dot = key.find('.');
      if (dot == std::string::npos) {
        overrides[key] = storage;
      } else {
        overrides[key.substr(0, dot)][key.substr(dot + 1)] = storage;
      }
    });
    return opt;
  }

  void AddSwitch(CLI::App* app, const std::string& flag,
                 const std::string& key, json value, const std::string& help) {
    CLI::Option* opt = app->add_flag(flag, help);
    collect.push_back([this, opt, key, value] {
      if (opt->count() > 0) overrides[key] = value;
    });
  }

  void Collect() {
    for (auto& fn : collect) fn();
  }
};

struct Values {
  std::string kg, dataset, out, vocab, tmpl, trace_out, report_out;
  std::string sweep_omega, sweep_beam;
  double omega = 2.0;
  std::string space = "logit";
  std::size_t beam = 20;
  std::size_t max_steps = 0;
  int max_hops = 2;
  std::string mask_form = "[MASK]";
  std::string plus = "top1";
  std::size_t plus_k = 1;
  double plus_tau = 0.5;
  std::string lm = "toy";
  std::uint64_t lm_seed = 7;
  std::string embedder = "reference";
  std::string embedder_host = "127.0.0.1";
  int embedder_port = 8080;
  std::size_t trace_top_k = 0;
  std::size_t jobs = 1;
  std::string match = "casefold";
  std::string f1_set = "all";
  std::uint64_t synth_seed = 1;
  std::size_t synth_questions = 200;
};

void AddInputFlags(CLI::App* app, RunFlags& f, Values& v) {
  app->add_option("--config", f.config,
                  "JSON run configuration; flags given here override it");
  app->add_flag("--print-config", f.print_config,
                "Print the resolved configuration and exit");
  f.Add(app, "--kg", "kg", v.kg, "Triples file (head<TAB>relation<TAB>tail)");
  f.Add(app, "--dataset", "dataset", v.dataset,
        "Questions file (JSON lines)");
}

void AddDecodeFlags(CLI::App* app, RunFlags& f, Values& v) {
  f.Add(app, "--vocab", "vocab", v.vocab,
        "Vocabulary file; empty selects the built-in vocabulary");
  f.Add(app, "--template", "template", v.tmpl,
        "Prompt template file; empty selects the built-in template");
  f.Add(app, "--omega", "omega", v.omega, "Strengthening coefficient");
  f.Add(app, "--space", "space", v.space,
        "Combination space: logit or probability");
  f.Add(app, "--beam", "beam", v.beam, "Beam size");
  f.Add(app, "--max-steps", "max_steps", v.max_steps,
        "Decode step limit; 0 means longest path + 1");
  f.Add(app, "--max-hops", "max_hops", v.max_hops,
        "Path length limit when extracting paths");
  f.AddSwitch(app, "--no-strengthen", "strengthen", false,
              "Disable logits strengthening");
  f.AddSwitch(app, "--no-filter", "filter", false,
              "Disable automaton filtering");
  f.Add(app, "--mask-form", "mask_form", v.mask_form,
        "Text replacing masked path lines");
  f.AddSwitch(app, "--no-mask", "mask_form", nullptr,
              "Leave the contrast prompt unmasked");
  f.Add(app, "--plus", "plus.kind", v.plus,
        "High-scoring path policy: top1, topk or threshold");
  f.Add(app, "--plus-k", "plus.k", v.plus_k, "k for --plus topk");
  f.Add(app, "--plus-tau", "plus.tau", v.plus_tau,
        "Score threshold for --plus threshold");
  f.Add(app, "--lm", "lm.kind", v.lm, "Language model: toy or adversarial");
  f.Add(app, "--lm-seed", "lm.seed", v.lm_seed, "Toy LM seed");
  f.Add(app, "--embedder", "embedder.kind", v.embedder,
        "Path scorer: reference or http");
  f.Add(app, "--embedder-host", "embedder.host", v.embedder_host,
        "Embedding service host");
  f.Add(app, "--embedder-port", "embedder.port", v.embedder_port,
        "Embedding service port");
  f.Add(app, "--trace-out", "trace_out", v.trace_out,
        "Write a decode trace (JSON lines)");
  f.Add(app, "--trace-top-k", "trace_logits_top_k", v.trace_top_k,
        "Top-k logits per expansion in the trace; 0 disables");
  f.Add(app, "--jobs", "jobs", v.jobs, "Questions decoded in parallel");
}

int Resolve(RunFlags& f, std::string& config_json) {
  f.Collect();
  std::string file_text;
  if (!f.config.empty() && !ReadText(f.config, file_text)) {
    std::cerr << "error: io: cannot read config file " << f.config << "\n";
    return kExitConfig;
  }
  char* resolved = nullptr;
  const std::string overrides = f.overrides.dump();
  const kgd_status st = kgd_config_resolve(
      f.config.empty() ? nullptr : file_text.c_str(), overrides.c_str(),
      &resolved);
  if (st != KGD_OK) return Fail(st);
  config_json = resolved;
  kgd_string_free(resolved);
  return -1;
}

int RunIngest(const std::string& triples, const std::string& out) {
  kgd_graph* g = nullptr;
  kgd_status st = kgd_graph_load(triples.c_str(), &g);
  if (st != KGD_OK) return Fail(st);
  std::cout << "entities " << kgd_graph_num_entities(g) << "\n"
            << "relations " << kgd_graph_num_relations(g) << "\n"
            << "triples " << kgd_graph_num_triples(g) << "\n";
  if (!out.empty()) st = kgd_graph_write(g, out.c_str());
  kgd_graph_free(g);
  return st == KGD_OK ? kExitOk : Fail(st);
}

int RunDecode(const std::string& config) {
  char* jsonl = nullptr;
  kgd_run_summary s{};
  const kgd_status st = kgd_run_decode(config.c_str(), &jsonl, &s);
  if (st != KGD_OK) return Fail(st);
  if (json::parse(config).value("out", "").empty()) std::cout << jsonl;
  kgd_string_free(jsonl);
  std::cerr << "questions " << s.total << " failed " << s.failed << "\n";
  return s.total > 0 && s.failed == s.total ? kExitAllFailed : kExitOk;
}

int RunEval(const std::string& config) {
  char* report = nullptr;
  kgd_run_summary s{};
  const kgd_status st = kgd_run_eval(config.c_str(), &report, &s);
  if (st != KGD_OK) return Fail(st);
  if (json::parse(config).value("report_out", "").empty()) std::cout << report;
  kgd_string_free(report);
  char line[160];
  std::snprintf(line, sizeof(line),
                "questions %zu failed %zu hit1 %.6f f1 %.6f\n", s.total,
                s.failed, s.hit1, s.f1);
  std::cerr << line;
  return s.total > 0 && s.failed == s.total ? kExitAllFailed : kExitOk;
}

int RunSynth(const std::string& config) {
  kgd_run_summary s{};
  const kgd_status st = kgd_run_synth(config.c_str(), &s);
  if (st != KGD_OK) return Fail(st);
  std::cout << "questions " << s.total << "\n"
            << "triples " << s.triples << "\n";
  return kExitOk;
}

int RunServe(const std::string& host, int port, bool stdio,
             const std::vector<std::string>& graphs, const std::string& vocab,
             int max_hops) {
  json options = json::object();
  if (!vocab.empty()) options["vocab"] = vocab;
  options["max_hops"] = max_hops;
  json g = json::object();
  for (const std::string& spec : graphs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: config: --graph expects NAME=PATH, got " << spec
                << "\n";
      return kExitConfig;
    }
    g[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  options["graphs"] = g;

  // Block the stop signals before any thread starts so only sigwait sees
  // them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  if (!stdio) pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  kgd_sidecar* sidecar = nullptr;
  kgd_status st = kgd_sidecar_create(options.dump().c_str(), &sidecar);
  if (st != KGD_OK) return Fail(st);
  if (stdio) {
    st = kgd_sidecar_serve_fd(sidecar, 0, 1);
    kgd_sidecar_free(sidecar);
    return st == KGD_OK ? kExitOk : Fail(st);
  }
  int bound = 0;
  st = kgd_sidecar_start_tcp(sidecar, host.c_str(), port, &bound);
  if (st != KGD_OK) {
    kgd_sidecar_free(sidecar);
    return Fail(st);
  }
  std::cout << "listening " << host << ":" << bound << std::endl;
  int sig = 0;
  sigwait(&stop_signals, &sig);
  kgd_sidecar_stop(sidecar);
  kgd_sidecar_free(sidecar);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-graph constrained decoding engine", "kgd"};
  app.set_version_flag("--version", kgd_version());
  app.require_subcommand(1);

  std::string ingest_in, ingest_out;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "Parse a triples file and report entity, relation and triple "
                "counts");
  ingest->add_option("triples", ingest_in, "Triples file")->required();
  ingest->add_option("--out", ingest_out,
                     "Write the sorted, de-duplicated triples here");

  Values dv;
  RunFlags df;
  CLI::App* decode = app.add_subcommand(
      "decode", "Decode every question; results as JSON lines");
  AddInputFlags(decode, df, dv);
  df.Add(decode, "--out", "out", dv.out,
         "Results file; empty writes to stdout");
  AddDecodeFlags(decode, df, dv);

  Values ev;
  RunFlags ef;
  CLI::App* eval = app.add_subcommand(
      "eval", "Decode and score a dataset with gold answers");
  AddInputFlags(eval, ef, ev);
  ef.Add(eval, "--report-out", "report_out", ev.report_out,
         "Report file; empty writes to stdout");
  ef.Add(eval, "--sweep-omega", "sweep_omega", ev.sweep_omega,
         "Write an omega sweep CSV (-1,0,1,2,3,5,10) here");
  ef.Add(eval, "--sweep-beam", "sweep_beam", ev.sweep_beam,
         "Write a beam sweep CSV (1,2,5,10,20) here");
  ef.Add(eval, "--match", "match", ev.match,
         "Answer matching: casefold or strict");
  ef.Add(eval, "--f1-set", "f1_set", ev.f1_set,
         "Predicted set for F1: all or top1");
  AddDecodeFlags(eval, ef, ev);

  Values sv;
  RunFlags sf;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate the synthetic question suite");
  sf.Add(synth, "--kg", "kg", sv.kg, "Output triples file")->required();
  sf.Add(synth, "--dataset", "dataset", sv.dataset, "Output questions file")
      ->required();
  synth->add_option("--config", sf.config, "JSON run configuration");
  sf.Add(synth, "--seed", "synth.seed", sv.synth_seed, "Generator seed");
  sf.Add(synth, "--questions", "synth.num_questions", sv.synth_questions,
         "Number of questions");

  std::string host = "127.0.0.1";
  int port = 7878;
  bool stdio = false;
  std::vector<std::string> graphs;
  std::string serve_vocab;
  int serve_hops = 2;
  CLI::App* serve = app.add_subcommand(
      "serve", "Run the sidecar service (JSON lines over TCP or stdio)");
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Listen port; 0 picks a free port")
      ->capture_default_str();
  serve->add_flag("--stdio", stdio, "Serve frames on stdin/stdout instead");
  serve->add_option("--graph", graphs,
                    "Graph available as kg_ref, as NAME=PATH (repeatable)");
  serve->add_option("--vocab", serve_vocab,
                    "Vocabulary file; empty selects the built-in vocabulary");
  serve->add_option("--max-hops", serve_hops, "Path length limit")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (*ingest) return RunIngest(ingest_in, ingest_out);
  if (*serve) return RunServe(host, port, stdio, graphs, serve_vocab, serve_hops);

  RunFlags& flags = *decode ? df : *eval ? ef : sf;
  std::string config;
  if (int rc = Resolve(flags, config); rc >= 0) return rc;
  if (flags.print_config) {
    std::cout << config << "\n";
    return kExitOk;
  }
  if (*decode) return RunDecode(config);
  if (*eval) return RunEval(config);
  return RunSynth(config);
}
