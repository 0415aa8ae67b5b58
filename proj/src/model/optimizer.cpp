// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/optimizer.hpp"

#include <cmath>

#include "wenyan/common/errors.hpp"

namespace wenyan {

void AdamW::step(ModelParams& params, const std::vector<Tensor>& grads) {
    if (grads.size() != params.block_count()) {
        throw ShapeMismatch("optimizer: one gradient tensor per block");
    }
    if (m_.empty()) {
        m_.resize(params.block_count());
        v_.resize(params.block_count());
        for (size_t b = 0; b < params.block_count(); ++b) {
            m_[b] = Tensor::zeros(params.block(b).shape);
            v_[b] = Tensor::zeros(params.block(b).shape);
        }
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (size_t b = 0; b < params.block_count(); ++b) {
        Tensor& theta = params.block(b);
        const bool has_grad = !grads[b].shape.empty();
        for (size_t i = 0; i < theta.data.size(); ++i) {
            const double g = has_grad ? grads[b].data[i] : 0.0;
            m_[b].data[i] = cfg_.beta1 * m_[b].data[i] + (1.0 - cfg_.beta1) * g;
            v_[b].data[i] =
                cfg_.beta2 * v_[b].data[i] + (1.0 - cfg_.beta2) * g * g;
            const double mhat = m_[b].data[i] / bc1;
            const double vhat = v_[b].data[i] / bc2;
            theta.data[i] -=
                cfg_.lr * (mhat / (std::sqrt(vhat) + cfg_.eps) +
                           cfg_.weight_decay * theta.data[i]);
        }
    }
}

}  // namespace wenyan
