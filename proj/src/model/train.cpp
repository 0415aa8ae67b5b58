// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/train.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wenyan/align/aligner.hpp"
#include "wenyan/common/errors.hpp"

namespace wenyan {

namespace {

struct TrainItem {
    std::string id;
    std::u32string src_chars;
    std::u32string tgt_chars;
    std::vector<TokenId> src_ids;
    std::vector<TokenId> tgt_ids;  // bare target, no BOS/EOS
    AlignmentSet alignment;
};

std::vector<TrainItem> prepare_items(const std::vector<CorpusRecord>& corpus,
                                     const Lexicon& lex,
                                     const Tokenizer& tok) {
    std::vector<TrainItem> items;
    items.reserve(corpus.size());
    for (const auto& rec : corpus) {
        if (!rec.target || rec.source.empty() || rec.target->empty()) {
            continue;
        }
        TrainItem item;
        item.id = rec.id;
        item.src_chars = rec.source;
        item.tgt_chars = *rec.target;
        item.src_ids = tok.encode(rec.source);
        item.tgt_ids = tok.encode(*rec.target);
        item.alignment = align_pair(rec.source, *rec.target,
                                    segment_target(*rec.target, lex));
        items.push_back(std::move(item));
    }
    return items;
}

DasExample plain_example(const TrainItem& item) {
    DasExample ex;
    ex.noised_src = item.src_ids;
    ex.tgt.reserve(item.tgt_ids.size() + 2);
    ex.tgt.push_back(Tokenizer::kBos);
    ex.tgt.insert(ex.tgt.end(), item.tgt_ids.begin(), item.tgt_ids.end());
    ex.tgt.push_back(Tokenizer::kEos);
    return ex;
}

}  // namespace

TrainResult train(ModelParams& params,
                  const std::vector<CorpusRecord>& corpus, const Lexicon& lex,
                  const Tokenizer& tok, const TrainOptions& opts) {
    opts.noise.validate();
    opts.weights.validate();
    if (opts.schedule.batch_size == 0) {
        throw ConfigError("batch_size must be positive");
    }
    if (!opts.use_das && !opts.use_dmlm) {
        throw ConfigError("at least one training task must be enabled");
    }

    NoiseConfig noise = opts.noise;
    if (!opts.dynamic_mask) {
        const double enc_mid =
            (noise.enc_mask_range.first + noise.enc_mask_range.second) / 2.0;
        const double dec_mid =
            (noise.dec_mask_range.first + noise.dec_mask_range.second) / 2.0;
        noise.enc_mask_range = {enc_mid, enc_mid};
        noise.dec_mask_range = {dec_mid, dec_mid};
    }

    const std::vector<TrainItem> items = prepare_items(corpus, lex, tok);
    if (items.empty()) {
        throw EmptyCorpus("no trainable parallel records");
    }

    AdamW optimizer(opts.adamw);
    TrainResult result;
    size_t step = 0;

    auto run_step = [&](const std::vector<size_t>& batch_idx,
                        const std::string& phase, size_t epoch) {
        ModelGraph mg(params);
        Graph& g = mg.graph();
        double l_das = 0.0, l_dmlm = 0.0, l_total = 0.0;
        NodeId total_node = -1;

        const bool multitask = phase == "multitask";
        if (multitask) {
            std::vector<DasExample> das_batch;
            std::vector<DmlmExample> dmlm_batch;
            for (size_t idx : batch_idx) {
                const TrainItem& item = items[idx];
                const std::string key =
                    item.id + "#" + std::to_string(epoch);
                if (opts.use_das) {
                    Rng rng(derive_stream_seed(noise.seed, key + "#das"));
                    das_batch.push_back(make_das(item.src_chars,
                                                 item.tgt_chars,
                                                 item.alignment, tok, noise,
                                                 rng));
                }
                if (opts.use_dmlm) {
                    Rng rng(derive_stream_seed(noise.seed, key + "#dmlm"));
                    dmlm_batch.push_back(
                        make_dmlm(item.src_ids, item.tgt_ids, tok, noise,
                                  rng));
                }
            }
            if (opts.use_das && opts.use_dmlm) {
                const DasBatchLoss das = build_das_loss(mg, das_batch);
                const DmlmBatchLoss dmlm =
                    build_dmlm_loss(mg, dmlm_batch, opts.weights.lambda);
                total_node = g.add_scaled(das.loss, 1.0 - opts.weights.mu,
                                          dmlm.combined, opts.weights.mu);
                l_das = g.value(das.loss)[0];
                l_dmlm = g.value(dmlm.combined)[0];
            } else if (opts.use_das) {
                const DasBatchLoss das = build_das_loss(mg, das_batch);
                total_node = das.loss;
                l_das = g.value(das.loss)[0];
            } else {
                const DmlmBatchLoss dmlm =
                    build_dmlm_loss(mg, dmlm_batch, opts.weights.lambda);
                total_node = dmlm.combined;
                l_dmlm = g.value(dmlm.combined)[0];
            }
        } else {
            std::vector<DasExample> plain_batch;
            for (size_t idx : batch_idx) {
                plain_batch.push_back(plain_example(items[idx]));
            }
            const DasBatchLoss das = build_das_loss(mg, plain_batch);
            total_node = das.loss;
            l_das = g.value(das.loss)[0];
        }
        l_total = g.value(total_node)[0];
        if (!std::isfinite(l_total)) {
            throw NonFiniteLoss("training step " + std::to_string(step));
        }

        g.backward(total_node);
        std::vector<Tensor> grads;
        mg.accumulate_grads(grads);
        optimizer.step(params, grads);
        if (!params.all_finite()) {
            throw NonFiniteLoss("parameters after step " +
                                std::to_string(step));
        }
        ++step;
        result.log.push_back({step, l_das, l_dmlm, l_total, phase});
    };

    auto run_epoch = [&](const std::string& phase, size_t epoch,
                         const std::string& shuffle_key) {
        std::vector<size_t> order(items.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng shuffle_rng(derive_stream_seed(opts.seed, shuffle_key));
        shuffle_rng.shuffle(order);
        for (size_t start = 0; start < order.size();
             start += opts.schedule.batch_size) {
            const size_t end =
                std::min(order.size(), start + opts.schedule.batch_size);
            run_step({order.begin() + static_cast<ptrdiff_t>(start),
                      order.begin() + static_cast<ptrdiff_t>(end)},
                     phase, epoch);
        }
    };

    for (size_t e = 0; e < opts.schedule.multitask_epochs; ++e) {
        run_epoch("multitask", e, "shuffle#multitask#" + std::to_string(e));
    }
    if (opts.schedule.translation_epoch) {
        run_epoch("translation", opts.schedule.multitask_epochs,
                  "shuffle#translation");
    }
    return result;
}

void write_loss_log_csv(const std::vector<LossLogEntry>& log,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write loss log: " + path);
    out << "step,l_das,l_dmlm,l_total,phase\n";
    char buf[128];
    for (const auto& e : log) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,", e.step,
                      e.l_das, e.l_dmlm, e.l_total);
        out << buf << e.phase << "\n";
    }
}

}  // namespace wenyan
