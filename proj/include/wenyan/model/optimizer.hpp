// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "wenyan/model/transformer.hpp"

namespace wenyan {

struct AdamWConfig {
    double lr = 3e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.01;
};

// AdamW with decoupled weight decay applied uniformly to every block.
class AdamW {
public:
    explicit AdamW(AdamWConfig cfg) : cfg_(cfg) {}

    // grads holds one tensor per parameter block; an empty tensor is
    // treated as an all-zero gradient for that block.
    void step(ModelParams& params, const std::vector<Tensor>& grads);

    size_t steps_taken() const { return t_; }

private:
    AdamWConfig cfg_;
    size_t t_ = 0;
    std::vector<Tensor> m_, v_;
};

}  // namespace wenyan
