// SPDX-License-Identifier: Apache-2.0
//
// The three training objectives: autoregressive NLL over substituted
// sources, dual masked-token NLL mixed by lambda, and their mu-weighted
// combination.

#pragma once

#include <vector>

#include "wenyan/model/transformer.hpp"
#include "wenyan/noising/noise.hpp"

namespace wenyan {

struct LossWeights {
    double lambda = 0.3;  // encoder share inside the dual-mask loss
    double mu = 0.3;      // dual-mask share in the combined loss

    void validate() const;  // throws ConfigError
};

struct DasBatchLoss {
    NodeId loss = -1;        // mean per-token NLL over the batch
    size_t token_count = 0;  // predicted tokens (targets + EOS)
};

struct DmlmBatchLoss {
    NodeId enc_loss = -1;  // mean NLL over all masked source positions
    NodeId dec_loss = -1;  // mean NLL over all masked target positions
    NodeId combined = -1;  // lambda * enc + (1 - lambda) * dec
    size_t enc_count = 0;
    size_t dec_count = 0;
};

// Graph builders used by the trainer; examples with an empty source or an
// empty target (nothing to predict) are skipped.
DasBatchLoss build_das_loss(ModelGraph& mg,
                            const std::vector<DasExample>& batch);
DmlmBatchLoss build_dmlm_loss(ModelGraph& mg,
                              const std::vector<DmlmExample>& batch,
                              double lambda);

// Value-level entry points. Throw EmptyBatch on empty (or fully skipped)
// batches; loss_dmlm throws NoMaskedPositions when a side has no masked
// position anywhere in the batch.
double loss_das(const ModelParams& params,
                const std::vector<DasExample>& batch);
double loss_dmlm(const ModelParams& params,
                 const std::vector<DmlmExample>& batch,
                 const LossWeights& w);

// (1 - mu) * das + mu * dmlm; throws NonFiniteLoss on non-finite inputs.
double loss_total(double das_loss, double dmlm_loss, const LossWeights& w);

}  // namespace wenyan
