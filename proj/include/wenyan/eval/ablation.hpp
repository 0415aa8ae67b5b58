// SPDX-License-Identifier: Apache-2.0
//
// Ablation harness: one training run per configuration over identical data
// and seed, scored on the same evaluation splits.

#pragma once

#include <string>
#include <vector>

#include "wenyan/eval/evaluate.hpp"
#include "wenyan/model/train.hpp"

namespace wenyan {

struct AblationConfig {
    bool use_das = true;
    bool use_dmlm = true;
    bool dynamic_mask = true;
    bool translation_epoch = true;
    std::string label;  // canonical encoding of the flags
};

// Canonical label: "full" or "wo_" + the disabled component.
std::string ablation_label(bool use_das, bool use_dmlm, bool dynamic_mask,
                           bool translation_epoch);

// The full model plus the four single-component removals.
std::vector<AblationConfig> standard_ablations();

struct AblationRow {
    std::string label;
    std::vector<std::pair<std::string, double>> set_bleu;
    double average = 0.0;
};

struct AblationReport {
    std::vector<AblationRow> rows;
};

AblationReport run_ablation_matrix(
    const std::vector<CorpusRecord>& train_corpus,
    const std::vector<BenchmarkSplit>& eval_splits, const Lexicon& lex,
    const Tokenizer& tok, const ModelHParams& hp,
    const TrainOptions& base_opts, const DecodeConfig& dcfg,
    const std::vector<AblationConfig>& configs);

std::string ablation_table(const AblationReport& report);
std::string ablation_report_to_json(const AblationReport& report);

}  // namespace wenyan
