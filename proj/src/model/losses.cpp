// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/losses.hpp"

#include <cmath>

#include "wenyan/common/errors.hpp"

namespace wenyan {

void LossWeights::validate() const {
    if (lambda < 0.0 || lambda > 1.0 || mu < 0.0 || mu > 1.0) {
        throw ConfigError("loss weights must be in [0, 1]");
    }
}

DasBatchLoss build_das_loss(ModelGraph& mg,
                            const std::vector<DasExample>& batch) {
    if (batch.empty()) throw EmptyBatch("das loss over empty batch");
    Graph& g = mg.graph();
    DasBatchLoss out;
    NodeId total = -1;
    for (const DasExample& ex : batch) {
        if (ex.noised_src.empty() || ex.tgt.size() <= 2) continue;
        NodeId enc = mg.encode(ex.noised_src);
        const std::vector<TokenId> tgt_in(ex.tgt.begin(), ex.tgt.end() - 1);
        NodeId states = mg.decode_causal(enc, tgt_in);
        NodeId lp = mg.ar_log_probs(states);
        const std::vector<TokenId> predict(ex.tgt.begin() + 1, ex.tgt.end());
        NodeId nll = g.nll_sum(lp, predict);
        out.token_count += predict.size();
        total = (total < 0) ? nll : g.add(total, nll);
    }
    if (total < 0 || out.token_count == 0) {
        throw EmptyBatch("das batch has no scorable example");
    }
    out.loss = g.mul_scalar(total, 1.0 / static_cast<double>(out.token_count));
    return out;
}

DmlmBatchLoss build_dmlm_loss(ModelGraph& mg,
                              const std::vector<DmlmExample>& batch,
                              double lambda) {
    if (batch.empty()) throw EmptyBatch("dmlm loss over empty batch");
    Graph& g = mg.graph();
    DmlmBatchLoss out;
    NodeId enc_total = -1;
    NodeId dec_total = -1;
    for (const DmlmExample& ex : batch) {
        if (ex.masked_src.empty() || ex.masked_tgt.empty()) continue;
        NodeId enc = mg.encode(ex.masked_src);
        if (!ex.src_mask_positions.empty()) {
            NodeId lp =
                mg.mlm_log_probs(g.select_rows(enc, ex.src_mask_positions));
            NodeId nll = g.nll_sum(lp, ex.src_originals);
            out.enc_count += ex.src_originals.size();
            enc_total = (enc_total < 0) ? nll : g.add(enc_total, nll);
        }
        if (!ex.tgt_mask_positions.empty()) {
            NodeId dec = mg.decode_bidirectional(enc, ex.masked_tgt);
            NodeId lp =
                mg.mlm_log_probs(g.select_rows(dec, ex.tgt_mask_positions));
            NodeId nll = g.nll_sum(lp, ex.tgt_originals);
            out.dec_count += ex.tgt_originals.size();
            dec_total = (dec_total < 0) ? nll : g.add(dec_total, nll);
        }
    }
    if (out.enc_count == 0 || out.dec_count == 0) {
        throw NoMaskedPositions(
            "dmlm batch needs at least one masked position per side");
    }
    out.enc_loss =
        g.mul_scalar(enc_total, 1.0 / static_cast<double>(out.enc_count));
    out.dec_loss =
        g.mul_scalar(dec_total, 1.0 / static_cast<double>(out.dec_count));
    out.combined = g.add_scaled(out.enc_loss, lambda, out.dec_loss,
                                1.0 - lambda);
    return out;
}

double loss_das(const ModelParams& params,
                const std::vector<DasExample>& batch) {
    ModelGraph mg(params);
    const DasBatchLoss l = build_das_loss(mg, batch);
    return mg.graph().value(l.loss)[0];
}

double loss_dmlm(const ModelParams& params,
                 const std::vector<DmlmExample>& batch,
                 const LossWeights& w) {
    w.validate();
    ModelGraph mg(params);
    const DmlmBatchLoss l = build_dmlm_loss(mg, batch, w.lambda);
    return mg.graph().value(l.combined)[0];
}

double loss_total(double das_loss, double dmlm_loss, const LossWeights& w) {
    w.validate();
    if (!std::isfinite(das_loss) || !std::isfinite(dmlm_loss)) {
        throw NonFiniteLoss("loss inputs must be finite");
    }
    return (1.0 - w.mu) * das_loss + w.mu * dmlm_loss;
}

}  // namespace wenyan
