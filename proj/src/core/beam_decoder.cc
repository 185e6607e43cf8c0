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

#include "core/beam_decoder.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"
#include "core/kg_store.h"

namespace kgd {

namespace {

struct Candidate {
  std::size_t parent;
  TokenId token;
  double score;
  double log_prob;
};

// Lexicographic compare of (a_prefix + a_last) against (b_prefix + b_last).
bool LexLess(std::span<const TokenId> a_prefix, TokenId a_last,
             std::span<const TokenId> b_prefix, TokenId b_last) {
  const std::size_t na = a_prefix.size() + 1;
  const std::size_t nb = b_prefix.size() + 1;
  for (std::size_t i = 0; i < std::min(na, nb); ++i) {
    const TokenId x = i < a_prefix.size() ? a_prefix[i] : a_last;
    const TokenId y = i < b_prefix.size() ? b_prefix[i] : b_last;
    if (x != y) return x < y;
  }
  return na < nb;
}

bool BetterState(const BeamState& a, const BeamState& b) {
  if (a.log_score != b.log_score) return a.log_score > b.log_score;
  return a.generated < b.generated;
}

std::pair<LogitsVector, LogitsVector> BranchPair(
    const LmProvider& lm, const EncodedPrompts& prompts,
    const PipelineConfig& pcfg, std::span<const TokenId> generated) {
  if (pcfg.strengthen) {
    return lm.BranchLogits(prompts.main, prompts.mask, generated);
  }
  LogitsVector main = lm.Logits(prompts.main, generated);
  main.stage = LogitsStage::kRawMain;
  return {std::move(main), LogitsVector{{}, LogitsStage::kRawMask}};
}

void CheckShape(const LmProvider& lm, const LogitsVector& v,
                std::size_t vocab) {
  if (v.values.size() != vocab) {
    throw Error(ErrorCode::kShape, "LM returned " +
                                       std::to_string(v.values.size()) +
                                       " logits for a vocabulary of " +
                                       std::to_string(vocab));
  }
  (void)lm;
}

}  // namespace

EncodedPrompts EncodePrompts(const Tokenizer& tokenizer,
                             const PromptPair& prompts) {
  return {tokenizer.Encode(prompts.original), tokenizer.Encode(prompts.masked)};
}

DecodeResult BeamDecode(const LmProvider& lm, const Tokenizer& tokenizer,
                        const PromptPair& prompts,
                        const TokenAutomaton& automaton,
                        const DecodeConfig& cfg, const PipelineConfig& pcfg,
                        const TraceSink& trace) {
  return BeamDecode(lm, tokenizer, EncodePrompts(tokenizer, prompts),
                    automaton, cfg, pcfg, trace);
}

DecodeResult BeamDecode(const LmProvider& lm, const Tokenizer& tokenizer,
                        const EncodedPrompts& prompts,
                        const TokenAutomaton& automaton,
                        const DecodeConfig& cfg, const PipelineConfig& pcfg,
                        const TraceSink& trace) {
  if (automaton.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "automaton accepts nothing");
  }
  if (cfg.beam_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "beam size must be >= 1");
  }
  const std::size_t vocab = automaton.vocab_size();
  if (lm.vocab_size() != vocab || tokenizer.size() != vocab) {
    throw Error(ErrorCode::kShape, "LM, tokenizer and automaton disagree on "
                                   "vocabulary size");
  }
  const TokenId eos = tokenizer.reserved().eos;
  const std::size_t max_steps =
      cfg.max_steps > 0 ? cfg.max_steps : automaton.max_path_tokens() + 1;
  const std::size_t beam = cfg.beam_size;

  std::vector<BeamState> live(1);
  live[0].state = automaton.root();
  std::vector<BeamState> finished;

  for (std::size_t step = 0; step < max_steps && !live.empty(); ++step) {
    std::vector<Candidate> candidates;
    for (std::size_t h = 0; h < live.size(); ++h) {
      const BeamState& hyp = live[h];
      auto [main, mask] = BranchPair(lm, prompts, pcfg, hyp.generated);
      CheckShape(lm, main, vocab);
      if (pcfg.strengthen) CheckShape(lm, mask, vocab);

      LogitsVector z;
      try {
        z = StepLogits(main, mask, pcfg, &automaton,
                       hyp.state.value_or(automaton.root()));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kDeadEnd) continue;  // prune
        throw;
      }
      const std::vector<double> log_probs = LogSoftmax(z.values);
      for (std::size_t t = 0; t < vocab; ++t) {
        if (!std::isfinite(log_probs[t])) continue;
        candidates.push_back({h, static_cast<TokenId>(t),
                              hyp.log_score + log_probs[t], log_probs[t]});
      }
      if (trace && cfg.trace_logits_top_k > 0) {
        LogitsVector strengthened =
            pcfg.strengthen ? Strengthen(main, mask, pcfg.omega, pcfg.space)
                            : LogitsVector{main.values,
                                           LogitsStage::kStrengthened};
        nlohmann::ordered_json rec;
        rec["kind"] = "logits";
        rec["hypothesis"] = h;
        rec["state"] = hyp.state ? nlohmann::ordered_json(*hyp.state)
                                 : nlohmann::ordered_json(nullptr);
        rec["logits"] = LogitsDebugRecord(
            step, tokenizer.Decode(hyp.generated, true), tokenizer, main,
            pcfg.strengthen ? mask : main, strengthened, z,
            cfg.trace_logits_top_k);
        trace(rec);
      }
    }

    auto better = [&](const Candidate& a, const Candidate& b) {
      if (a.score != b.score) return a.score > b.score;
      return LexLess(live[a.parent].generated, a.token,
                     live[b.parent].generated, b.token);
    };
    const std::size_t keep = std::min(beam, candidates.size());
    std::partial_sort(candidates.begin(),
                      candidates.begin() + static_cast<long>(keep),
                      candidates.end(), better);
    candidates.resize(keep);

    std::vector<BeamState> next_live;
    for (const Candidate& c : candidates) {
      const BeamState& parent = live[c.parent];
      BeamState child;
      child.generated = parent.generated;
      child.generated.push_back(c.token);
      child.log_score = c.score;
      if (c.token == eos) {
        child.finished = true;
        child.state = parent.state;
      } else if (parent.state) {
        child.state = automaton.TryStep(*parent.state, c.token);
      }
      if (trace) {
        nlohmann::ordered_json rec;
        rec["kind"] = "choice";
        rec["step"] = step;
        rec["prefix"] = tokenizer.Decode(parent.generated, true);
        rec["token"] = c.token;
        rec["piece"] = std::string(tokenizer.Piece(c.token));
        rec["log_prob"] = c.log_prob;
        rec["log_score"] = c.score;
        rec["state"] = child.state ? nlohmann::ordered_json(*child.state)
                                   : nlohmann::ordered_json(nullptr);
        rec["finished"] = child.finished;
        trace(rec);
      }
      (child.finished ? finished : next_live).push_back(std::move(child));
    }
    live = std::move(next_live);

    // Scores only decrease, so once beam finished hypotheses beat every live
    // one the ranking is settled.
    if (finished.size() >= beam && !live.empty()) {
      std::sort(finished.begin(), finished.end(), BetterState);
      finished.resize(beam);
      double best_live = live[0].log_score;
      for (const BeamState& s : live) best_live = std::max(best_live, s.log_score);
      if (finished.back().log_score > best_live) break;
    }
  }

  if (finished.empty()) {
    std::string prefixes;
    for (std::size_t i = 0; i < live.size() && i < 5; ++i) {
      prefixes += (i ? "; '" : "'") + tokenizer.Decode(live[i].generated, true) + "'";
    }
    throw Error(ErrorCode::kExhausted,
                "no hypothesis finished within " + std::to_string(max_steps) +
                    " steps; live prefixes: " +
                    (prefixes.empty() ? "(none)" : prefixes));
  }
  std::sort(finished.begin(), finished.end(), BetterState);
  if (finished.size() > beam) finished.resize(beam);

  DecodeResult result;
  for (BeamState& s : finished) {
    RankedPath r;
    r.tokens.assign(s.generated.begin(), s.generated.end() - 1);
    r.text = tokenizer.Decode(r.tokens, true);
    r.log_score = s.log_score;
    r.legal = automaton.Accepts(r.tokens);
    result.ranked.push_back(std::move(r));
  }
  result.answer = FinalEntity(result.ranked.front().text);
  return result;
}

double ReplayLogScore(const LmProvider& lm, const EncodedPrompts& prompts,
                      const TokenAutomaton& automaton,
                      const PipelineConfig& pcfg,
                      std::span<const TokenId> tokens) {
  double total = 0.0;
  std::optional<StateId> state = automaton.root();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto generated = tokens.first(i);
    auto [main, mask] = BranchPair(lm, prompts, pcfg, generated);
    const LogitsVector z = StepLogits(main, mask, pcfg, &automaton,
                                      state.value_or(automaton.root()));
    total += LogSoftmax(z.values)[static_cast<std::size_t>(tokens[i])];
    if (state) state = automaton.TryStep(*state, tokens[i]);
  }
  return total;
}

}  // namespace kgd
