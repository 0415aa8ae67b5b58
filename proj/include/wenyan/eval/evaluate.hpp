// SPDX-License-Identifier: Apache-2.0
//
// Test-set decoding and scoring. Decoding is independent per sentence and
// may fan out over threads; scoring is an ordered reduction, so reports are
// identical regardless of thread count.

#pragma once

#include <string>
#include <vector>

#include "wenyan/eval/benchmark.hpp"
#include "wenyan/eval/bleu.hpp"
#include "wenyan/model/decode.hpp"
#include "wenyan/noising/tokenizer.hpp"

namespace wenyan {

struct EvalSetReport {
    std::string name;
    BleuReport bleu;
    size_t sentences = 0;
};

struct EvalReport {
    std::vector<EvalSetReport> sets;
    double average_bleu = 0.0;  // unweighted mean over sets
};

// Decodes every test source of every split and scores character-level BLEU
// against the references. Caller is responsible for the zero-shot protocol
// (the model must not have trained on these test records).
EvalReport evaluate_zero_shot(const ModelParams& params, const Tokenizer& tok,
                              const std::vector<BenchmarkSplit>& splits,
                              const DecodeConfig& dcfg, size_t threads = 1);

std::string eval_report_to_json(const EvalReport& report);
std::string eval_report_table(const EvalReport& report);

}  // namespace wenyan
