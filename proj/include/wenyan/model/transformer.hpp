// SPDX-License-Identifier: Apache-2.0
//
// Small pre-LN encoder-decoder transformer. The decoder has two modes over
// shared weights: causal self-attention feeding the autoregressive head,
// and full-visibility self-attention feeding the masked-prediction head.
// Both heads project through the transposed embedding table.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wenyan/model/graph.hpp"
#include "wenyan/model/tensor.hpp"
#include "wenyan/noising/tokenizer.hpp"

namespace wenyan {

struct ModelHParams {
    size_t vocab_size = 0;
    size_t d_model = 64;
    size_t n_layers = 2;  // per stack
    size_t n_heads = 4;
    size_t ffn_dim = 256;
    size_t max_len = 128;

    void validate() const;  // throws ConfigError
};

// All learnable tensors, stored as named blocks in a stable order so the
// optimizer, checkpoints, and gradient checks agree on indexing.
class ModelParams {
public:
    // Scaled-uniform init (+-1/sqrt(d_model)) for weights, zeros for biases,
    // ones for layer-norm gains.
    static ModelParams init(const ModelHParams& hp, uint64_t seed);

    const ModelHParams& hp() const { return hp_; }
    size_t block_count() const { return blocks_.size(); }
    const std::string& block_name(size_t i) const { return blocks_[i].first; }
    Tensor& block(size_t i) { return blocks_[i].second; }
    const Tensor& block(size_t i) const { return blocks_[i].second; }
    size_t index_of(const std::string& name) const;
    Tensor& block(const std::string& name) { return block(index_of(name)); }
    const Tensor& block(const std::string& name) const {
        return blocks_[index_of(name)].second;
    }

    size_t param_count() const;
    bool all_finite() const;
    uint64_t checksum() const;  // FNV-1a over the raw block bytes

    // Internal: used by init and checkpoint loading.
    void push_block(std::string name, Tensor t);
    void set_hp(const ModelHParams& hp) { hp_ = hp; }

private:
    ModelHParams hp_;
    std::vector<std::pair<std::string, Tensor>> blocks_;
    std::unordered_map<std::string, size_t> index_;
};

// One forward computation over a Graph. Parameter leaves are created on
// demand and shared within the graph, so several examples can accumulate
// gradients into the same blocks in one backward sweep.
class ModelGraph {
public:
    explicit ModelGraph(const ModelParams& params);

    Graph& graph() { return graph_; }
    NodeId param(size_t block_index);
    NodeId param(const std::string& name) {
        return param(params_.index_of(name));
    }

    // Encoder stack over source tokens; [len, d_model].
    NodeId encode(const std::vector<TokenId>& tokens);

    // Causal decoder over tgt_in (already shifted; BOS first); [len, d].
    NodeId decode_causal(NodeId enc_out, const std::vector<TokenId>& tgt_in);

    // Bidirectional decoder over a full (masked) target; [len, d].
    NodeId decode_bidirectional(NodeId enc_out,
                                const std::vector<TokenId>& tgt);

    // Output heads: hidden -> per-row log-probabilities over the vocab.
    NodeId ar_log_probs(NodeId states);
    NodeId mlm_log_probs(NodeId states);

    // Reads gradients of every parameter leaf into per-block accumulators
    // (created zero-shaped on first use).
    void accumulate_grads(std::vector<Tensor>& grad_blocks);

    const ModelParams& params() const { return params_; }

private:
    NodeId embed(const std::vector<TokenId>& tokens);
    NodeId decode_impl(NodeId enc_out, const std::vector<TokenId>& tgt,
                       bool causal);
    NodeId attention(NodeId q_in, NodeId kv_in, const std::string& prefix,
                     bool causal);
    NodeId ffn(NodeId x, const std::string& prefix);
    NodeId head_log_probs(NodeId states, const std::string& prefix);
    void check_len(size_t len) const;

    const ModelParams& params_;
    Graph graph_;
    std::vector<NodeId> param_nodes_;  // -1 until created
};

// Sinusoidal position encoding table for the first `len` positions.
Tensor sinusoidal_positions(size_t len, size_t d_model);

// Log-probabilities for tgt[1..] given src and the preceding tgt tokens:
// row i is the distribution of tgt[i+1] and conditions only on src and
// tgt[0..i]. tgt must start with BOS. Throws SequenceTooLong past max_len.
Tensor forward_causal(const ModelParams& params,
                      const std::vector<TokenId>& src,
                      const std::vector<TokenId>& tgt);

// Masked-token log-probabilities at the given positions: encoder-side
// predictions from the encoder states, target-side predictions from the
// bidirectional decoder (which sees the whole masked target).
std::pair<Tensor, Tensor> forward_bidirectional(
    const ModelParams& params, const std::vector<TokenId>& masked_src,
    const std::vector<TokenId>& masked_tgt,
    const std::vector<size_t>& src_positions,
    const std::vector<size_t>& tgt_positions);

}  // namespace wenyan
