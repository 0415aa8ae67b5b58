// SPDX-License-Identifier: Apache-2.0
//
// Reverse-mode autodiff tape over Tensor. Ops append nodes that reference
// earlier nodes only, so a single reverse sweep is a valid topological
// order. Every op validates its input shapes (throws ShapeMismatch).

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wenyan/model/tensor.hpp"

namespace wenyan {

using NodeId = int32_t;

class Graph {
public:
    // Leaves. Gradients are tracked only through nodes that (transitively)
    // depend on a requires_grad leaf.
    NodeId leaf(Tensor value, bool requires_grad = false);
    NodeId constant(Tensor value) { return leaf(std::move(value), false); }

    NodeId matmul(NodeId a, NodeId b);
    NodeId transpose(NodeId a);
    NodeId add(NodeId a, NodeId b);            // same shape
    NodeId add_rowvec(NodeId a, NodeId v);     // v broadcast over rows
    NodeId mul_scalar(NodeId a, double s);
    NodeId add_mask(NodeId a, Tensor mask);    // constant additive mask
    NodeId gelu(NodeId a);
    NodeId layer_norm(NodeId x, NodeId gain, NodeId bias);  // row-wise
    NodeId softmax_rows(NodeId a);
    NodeId log_softmax_rows(NodeId a);
    NodeId embedding_gather(NodeId table, std::vector<int32_t> ids);
    NodeId select_rows(NodeId a, std::vector<size_t> rows);
    NodeId slice_cols(NodeId a, size_t lo, size_t hi);
    NodeId concat_cols(const std::vector<NodeId>& parts);
    // Scalar: sum over rows r of -logprobs[r, targets[r]].
    NodeId nll_sum(NodeId logprobs, std::vector<int32_t> targets);
    // ca * a + cb * b, elementwise on same-shape tensors.
    NodeId add_scaled(NodeId a, double ca, NodeId b, double cb);

    const Tensor& value(NodeId id) const { return nodes_[size_t(id)].value; }
    // Gradient of a node after backward(); allocates (and keeps) a zero
    // buffer for nodes that never received one.
    const Tensor& grad(NodeId id) { return grad_buffer(id); }
    bool requires_grad(NodeId id) const {
        return nodes_[size_t(id)].requires_grad;
    }

    // Root must be scalar. A graph can only be swept once; throws
    // GraphReused on a second call.
    void backward(NodeId root);

    size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Tensor value;
        Tensor grad;  // allocated on demand during backward
        std::function<void(Graph&, NodeId)> backward_fn;
        bool requires_grad = false;
    };

    NodeId push(Tensor value, bool requires_grad,
                std::function<void(Graph&, NodeId)> backward_fn);
    Tensor& grad_buffer(NodeId id);
    bool has_grad(NodeId id) const {
        return !nodes_[size_t(id)].grad.shape.empty();
    }

    std::vector<Node> nodes_;
    bool backward_done_ = false;
};

}  // namespace wenyan
