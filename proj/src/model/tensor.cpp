// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/tensor.hpp"

#include <cmath>

namespace wenyan {

Tensor Tensor::zeros(std::vector<size_t> shape) {
    Tensor t;
    t.shape = std::move(shape);
    t.data.assign(t.numel(), 0.0);
    return t;
}

bool Tensor::all_finite() const {
    for (double v : data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::string Tensor::shape_str() const {
    std::string s = "[";
    for (size_t i = 0; i < shape.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

}  // namespace wenyan
