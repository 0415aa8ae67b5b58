// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/transformer.hpp"

#include <cmath>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/hashing.hpp"
#include "wenyan/common/rng.hpp"

namespace wenyan {

namespace {
constexpr double kMaskValue = -1e30;
}

void ModelHParams::validate() const {
    if (vocab_size < Tokenizer::kNumSpecials) {
        throw ConfigError("vocab_size must cover the special tokens");
    }
    if (d_model == 0 || n_layers == 0 || n_heads == 0 || ffn_dim == 0 ||
        max_len == 0) {
        throw ConfigError("model dimensions must be positive");
    }
    if (d_model % n_heads != 0) {
        throw ConfigError("d_model must be divisible by n_heads");
    }
}

void ModelParams::push_block(std::string name, Tensor t) {
    index_[name] = blocks_.size();
    blocks_.emplace_back(std::move(name), std::move(t));
}

size_t ModelParams::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw ConfigError("unknown parameter block: " + name);
    }
    return it->second;
}

size_t ModelParams::param_count() const {
    size_t n = 0;
    for (const auto& [name, t] : blocks_) n += t.numel();
    return n;
}

bool ModelParams::all_finite() const {
    for (const auto& [name, t] : blocks_) {
        if (!t.all_finite()) return false;
    }
    return true;
}

uint64_t ModelParams::checksum() const {
    uint64_t h = kFnvOffset;
    for (const auto& [name, t] : blocks_) {
        h = fnv1a(name, h);
        h = fnv1a(t.data.data(), t.data.size() * sizeof(double), h);
    }
    return h;
}

namespace {

Tensor uniform_init(std::vector<size_t> shape, double scale, Rng& rng) {
    Tensor t = Tensor::zeros(std::move(shape));
    for (double& v : t.data) v = rng.uniform(-scale, scale);
    return t;
}

void push_linear(ModelParams& p, const std::string& prefix, size_t in,
                 size_t out, double scale, Rng& rng) {
    p.push_block(prefix + ".w", uniform_init({in, out}, scale, rng));
    p.push_block(prefix + ".b", Tensor::zeros({out}));
}

void push_layer_norm(ModelParams& p, const std::string& prefix, size_t d) {
    Tensor gain = Tensor::zeros({d});
    for (double& v : gain.data) v = 1.0;
    p.push_block(prefix + ".g", std::move(gain));
    p.push_block(prefix + ".b", Tensor::zeros({d}));
}

void push_attention(ModelParams& p, const std::string& prefix, size_t d,
                    double scale, Rng& rng) {
    for (const char* part : {"wq", "wk", "wv", "wo"}) {
        push_linear(p, prefix + "." + part, d, d, scale, rng);
    }
}

}  // namespace

ModelParams ModelParams::init(const ModelHParams& hp, uint64_t seed) {
    hp.validate();
    ModelParams p;
    p.hp_ = hp;
    Rng rng(splitmix64(seed ^ 0x6d6f64656cULL));
    const double scale = 1.0 / std::sqrt(static_cast<double>(hp.d_model));

    p.push_block("embedding",
                 uniform_init({hp.vocab_size, hp.d_model}, scale, rng));
    for (size_t i = 0; i < hp.n_layers; ++i) {
        const std::string pre = "enc." + std::to_string(i);
        push_layer_norm(p, pre + ".ln1", hp.d_model);
        push_attention(p, pre + ".self", hp.d_model, scale, rng);
        push_layer_norm(p, pre + ".ln2", hp.d_model);
        push_linear(p, pre + ".ffn.1", hp.d_model, hp.ffn_dim, scale, rng);
        push_linear(p, pre + ".ffn.2", hp.ffn_dim, hp.d_model, scale, rng);
    }
    push_layer_norm(p, "enc.final_ln", hp.d_model);
    for (size_t i = 0; i < hp.n_layers; ++i) {
        const std::string pre = "dec." + std::to_string(i);
        push_layer_norm(p, pre + ".ln1", hp.d_model);
        push_attention(p, pre + ".self", hp.d_model, scale, rng);
        push_layer_norm(p, pre + ".ln2", hp.d_model);
        push_attention(p, pre + ".cross", hp.d_model, scale, rng);
        push_layer_norm(p, pre + ".ln3", hp.d_model);
        push_linear(p, pre + ".ffn.1", hp.d_model, hp.ffn_dim, scale, rng);
        push_linear(p, pre + ".ffn.2", hp.ffn_dim, hp.d_model, scale, rng);
    }
    push_layer_norm(p, "dec.final_ln", hp.d_model);
    for (const char* head : {"ar_head", "mlm_head"}) {
        push_linear(p, std::string(head) + ".proj", hp.d_model, hp.d_model,
                    scale, rng);
        p.push_block(std::string(head) + ".bias",
                     Tensor::zeros({hp.vocab_size}));
    }
    return p;
}

Tensor sinusoidal_positions(size_t len, size_t d_model) {
    Tensor pe = Tensor::zeros({len, d_model});
    for (size_t pos = 0; pos < len; ++pos) {
        for (size_t i = 0; i < d_model; i += 2) {
            const double rate =
                std::pow(10000.0, static_cast<double>(i) /
                                      static_cast<double>(d_model));
            const double angle = static_cast<double>(pos) / rate;
            pe.at(pos, i) = std::sin(angle);
            if (i + 1 < d_model) pe.at(pos, i + 1) = std::cos(angle);
        }
    }
    return pe;
}

ModelGraph::ModelGraph(const ModelParams& params)
    : params_(params), param_nodes_(params.block_count(), NodeId{-1}) {}

NodeId ModelGraph::param(size_t block_index) {
    NodeId& id = param_nodes_[block_index];
    if (id < 0) id = graph_.leaf(params_.block(block_index), true);
    return id;
}

void ModelGraph::check_len(size_t len) const {
    if (len > params_.hp().max_len) {
        throw SequenceTooLong("sequence length " + std::to_string(len) +
                              " exceeds max_len " +
                              std::to_string(params_.hp().max_len));
    }
}

NodeId ModelGraph::embed(const std::vector<TokenId>& tokens) {
    check_len(tokens.size());
    const size_t d = params_.hp().d_model;
    NodeId x = graph_.embedding_gather(param("embedding"), tokens);
    x = graph_.mul_scalar(x, std::sqrt(static_cast<double>(d)));
    return graph_.add_mask(x, sinusoidal_positions(tokens.size(), d));
}

NodeId ModelGraph::attention(NodeId q_in, NodeId kv_in,
                             const std::string& prefix, bool causal) {
    const size_t d = params_.hp().d_model;
    const size_t n_heads = params_.hp().n_heads;
    const size_t dh = d / n_heads;

    auto linear = [&](NodeId x, const std::string& part) {
        NodeId y = graph_.matmul(x, param(prefix + "." + part + ".w"));
        return graph_.add_rowvec(y, param(prefix + "." + part + ".b"));
    };
    NodeId q = linear(q_in, "wq");
    NodeId k = linear(kv_in, "wk");
    NodeId v = linear(kv_in, "wv");

    const size_t q_rows = graph_.value(q).rows();
    const size_t k_rows = graph_.value(k).rows();
    Tensor mask;
    if (causal) {
        mask = Tensor::zeros({q_rows, k_rows});
        for (size_t r = 0; r < q_rows; ++r) {
            for (size_t c = r + 1; c < k_rows; ++c) {
                mask.at(r, c) = kMaskValue;
            }
        }
    }

    std::vector<NodeId> heads;
    heads.reserve(n_heads);
    for (size_t h = 0; h < n_heads; ++h) {
        NodeId qh = graph_.slice_cols(q, h * dh, (h + 1) * dh);
        NodeId kh = graph_.slice_cols(k, h * dh, (h + 1) * dh);
        NodeId vh = graph_.slice_cols(v, h * dh, (h + 1) * dh);
        NodeId scores = graph_.matmul(qh, graph_.transpose(kh));
        scores = graph_.mul_scalar(
            scores, 1.0 / std::sqrt(static_cast<double>(dh)));
        if (causal) scores = graph_.add_mask(scores, mask);
        NodeId weights = graph_.softmax_rows(scores);
        heads.push_back(graph_.matmul(weights, vh));
    }
    NodeId merged = graph_.concat_cols(heads);
    return linear(merged, "wo");
}

NodeId ModelGraph::ffn(NodeId x, const std::string& prefix) {
    NodeId h = graph_.matmul(x, param(prefix + ".1.w"));
    h = graph_.add_rowvec(h, param(prefix + ".1.b"));
    h = graph_.gelu(h);
    h = graph_.matmul(h, param(prefix + ".2.w"));
    return graph_.add_rowvec(h, param(prefix + ".2.b"));
}

NodeId ModelGraph::encode(const std::vector<TokenId>& tokens) {
    NodeId x = embed(tokens);
    for (size_t i = 0; i < params_.hp().n_layers; ++i) {
        const std::string pre = "enc." + std::to_string(i);
        NodeId a = graph_.layer_norm(x, param(pre + ".ln1.g"),
                                     param(pre + ".ln1.b"));
        x = graph_.add(x, attention(a, a, pre + ".self", false));
        NodeId b = graph_.layer_norm(x, param(pre + ".ln2.g"),
                                     param(pre + ".ln2.b"));
        x = graph_.add(x, ffn(b, pre + ".ffn"));
    }
    return graph_.layer_norm(x, param("enc.final_ln.g"),
                             param("enc.final_ln.b"));
}

NodeId ModelGraph::decode_causal(NodeId enc_out,
                                 const std::vector<TokenId>& tgt_in) {
    return decode_impl(enc_out, tgt_in, true);
}

NodeId ModelGraph::decode_bidirectional(NodeId enc_out,
                                        const std::vector<TokenId>& tgt) {
    return decode_impl(enc_out, tgt, false);
}

NodeId ModelGraph::decode_impl(NodeId enc_out,
                               const std::vector<TokenId>& tgt, bool causal) {
    NodeId x = embed(tgt);
    for (size_t i = 0; i < params_.hp().n_layers; ++i) {
        const std::string pre = "dec." + std::to_string(i);
        NodeId a = graph_.layer_norm(x, param(pre + ".ln1.g"),
                                     param(pre + ".ln1.b"));
        x = graph_.add(x, attention(a, a, pre + ".self", causal));
        NodeId b = graph_.layer_norm(x, param(pre + ".ln2.g"),
                                     param(pre + ".ln2.b"));
        x = graph_.add(x, attention(b, enc_out, pre + ".cross", false));
        NodeId c = graph_.layer_norm(x, param(pre + ".ln3.g"),
                                     param(pre + ".ln3.b"));
        x = graph_.add(x, ffn(c, pre + ".ffn"));
    }
    return graph_.layer_norm(x, param("dec.final_ln.g"),
                             param("dec.final_ln.b"));
}

NodeId ModelGraph::head_log_probs(NodeId states, const std::string& prefix) {
    NodeId h = graph_.matmul(states, param(prefix + ".proj.w"));
    h = graph_.add_rowvec(h, param(prefix + ".proj.b"));
    NodeId logits = graph_.matmul(h, graph_.transpose(param("embedding")));
    logits = graph_.add_rowvec(logits, param(prefix + ".bias"));
    return graph_.log_softmax_rows(logits);
}

NodeId ModelGraph::ar_log_probs(NodeId states) {
    return head_log_probs(states, "ar_head");
}

NodeId ModelGraph::mlm_log_probs(NodeId states) {
    return head_log_probs(states, "mlm_head");
}

void ModelGraph::accumulate_grads(std::vector<Tensor>& grad_blocks) {
    if (grad_blocks.size() != params_.block_count()) {
        grad_blocks.resize(params_.block_count());
    }
    for (size_t i = 0; i < param_nodes_.size(); ++i) {
        if (param_nodes_[i] < 0) continue;
        const Tensor& g = graph_.grad(param_nodes_[i]);
        if (grad_blocks[i].shape.empty()) {
            grad_blocks[i] = g;
        } else {
            for (size_t k = 0; k < g.data.size(); ++k) {
                grad_blocks[i].data[k] += g.data[k];
            }
        }
    }
}

Tensor forward_causal(const ModelParams& params,
                      const std::vector<TokenId>& src,
                      const std::vector<TokenId>& tgt) {
    if (tgt.empty() || tgt[0] != Tokenizer::kBos) {
        throw ConfigError("causal target must begin with BOS");
    }
    ModelGraph mg(params);
    NodeId enc = mg.encode(src);
    const std::vector<TokenId> tgt_in(tgt.begin(), tgt.end() - 1);
    if (tgt_in.empty()) return Tensor::zeros({0, params.hp().vocab_size});
    NodeId states = mg.decode_causal(enc, tgt_in);
    NodeId lp = mg.ar_log_probs(states);
    return mg.graph().value(lp);
}

std::pair<Tensor, Tensor> forward_bidirectional(
    const ModelParams& params, const std::vector<TokenId>& masked_src,
    const std::vector<TokenId>& masked_tgt,
    const std::vector<size_t>& src_positions,
    const std::vector<size_t>& tgt_positions) {
    ModelGraph mg(params);
    Graph& g = mg.graph();
    NodeId enc = mg.encode(masked_src);
    NodeId src_lp =
        mg.mlm_log_probs(g.select_rows(enc, src_positions));
    NodeId dec = mg.decode_bidirectional(enc, masked_tgt);
    NodeId tgt_lp =
        mg.mlm_log_probs(g.select_rows(dec, tgt_positions));
    return {g.value(src_lp), g.value(tgt_lp)};
}

}  // namespace wenyan
