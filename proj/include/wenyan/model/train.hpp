// SPDX-License-Identifier: Apache-2.0
//
// Training driver: multitask epochs where each batch carries both an
// aligned-substitution view and a dual-masked view of the same records,
// followed by one plain translation epoch to close the train/inference gap.

#pragma once

#include <string>
#include <vector>

#include "wenyan/align/lexicon.hpp"
#include "wenyan/model/losses.hpp"
#include "wenyan/model/optimizer.hpp"
#include "wenyan/noising/noise.hpp"

namespace wenyan {

struct TrainSchedule {
    size_t multitask_epochs = 1;
    bool translation_epoch = true;
    size_t batch_size = 8;
};

struct TrainOptions {
    NoiseConfig noise;
    LossWeights weights;
    AdamWConfig adamw;
    TrainSchedule schedule;
    uint64_t seed = 0;
    // Ablation switches. With a single task enabled the loss is that task's
    // loss alone (no mu scaling); dynamic_mask=false collapses each mask
    // range to its midpoint.
    bool use_das = true;
    bool use_dmlm = true;
    bool dynamic_mask = true;
};

struct LossLogEntry {
    size_t step;
    double l_das;
    double l_dmlm;
    double l_total;
    std::string phase;  // "multitask" or "translation"
};

struct TrainResult {
    std::vector<LossLogEntry> log;
};

// Deterministic given the seed: epoch shuffles and per-record noise derive
// from (seed, record id, epoch), never from processing order. Records
// without a target or with an empty side are skipped. Throws NonFiniteLoss
// if a step produces non-finite values.
TrainResult train(ModelParams& params,
                  const std::vector<CorpusRecord>& corpus, const Lexicon& lex,
                  const Tokenizer& tok, const TrainOptions& opts);

// CSV columns: step,l_das,l_dmlm,l_total,phase.
void write_loss_log_csv(const std::vector<LossLogEntry>& log,
                        const std::string& path);

}  // namespace wenyan
