// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/decode.hpp"

#include <algorithm>

#include "wenyan/common/errors.hpp"

namespace wenyan {

void DecodeConfig::validate() const {
    if (beam_size == 0) throw ConfigError("beam_size must be positive");
    if ((mode == Mode::Greedy) != (beam_size == 1)) {
        throw ConfigError("beam_size must be 1 exactly when mode is greedy");
    }
}

namespace {

// Distribution of the next token given the current prefix; one row.
Tensor next_token_log_probs(ModelGraph& mg, NodeId enc,
                            const std::vector<TokenId>& ys) {
    NodeId states = mg.decode_causal(enc, ys);
    NodeId last = mg.graph().select_rows(states, {ys.size() - 1});
    return mg.graph().value(mg.ar_log_probs(last));
}

// First maximum wins, so ties resolve to the smallest token id.
TokenId argmax_row(const Tensor& row) {
    TokenId best = 0;
    double best_v = row[0];
    for (size_t i = 1; i < row.data.size(); ++i) {
        if (row.data[i] > best_v) {
            best_v = row.data[i];
            best = static_cast<TokenId>(i);
        }
    }
    return best;
}

std::vector<TokenId> strip_specials(const std::vector<TokenId>& ys) {
    std::vector<TokenId> out;
    for (TokenId t : ys) {
        if (t != Tokenizer::kBos && t != Tokenizer::kEos) out.push_back(t);
    }
    return out;
}

std::vector<TokenId> decode_greedy(const ModelParams& params,
                                   const std::vector<TokenId>& src,
                                   const DecodeConfig& cfg) {
    ModelGraph mg(params);
    NodeId enc = mg.encode(src);
    std::vector<TokenId> ys{Tokenizer::kBos};
    std::vector<TokenId> out;
    while (out.size() < cfg.max_decode_len &&
           ys.size() < params.hp().max_len) {
        const Tensor lp = next_token_log_probs(mg, enc, ys);
        const TokenId tok = argmax_row(lp);
        if (tok == Tokenizer::kEos) break;
        out.push_back(tok);
        ys.push_back(tok);
    }
    return out;
}

struct Hypothesis {
    std::vector<TokenId> ys;
    double log_prob = 0.0;
    bool done = false;
};

std::vector<TokenId> decode_beam(const ModelParams& params,
                                 const std::vector<TokenId>& src,
                                 const DecodeConfig& cfg) {
    ModelGraph mg(params);
    NodeId enc = mg.encode(src);
    std::vector<Hypothesis> beam{{{Tokenizer::kBos}, 0.0, false}};

    for (size_t step = 0; step < cfg.max_decode_len; ++step) {
        bool any_live = false;
        std::vector<Hypothesis> candidates;
        for (const Hypothesis& hyp : beam) {
            if (hyp.done || hyp.ys.size() >= params.hp().max_len) {
                Hypothesis h = hyp;
                h.done = true;
                candidates.push_back(std::move(h));
                continue;
            }
            any_live = true;
            const Tensor lp = next_token_log_probs(mg, enc, hyp.ys);
            // top beam_size extensions of this hypothesis
            std::vector<TokenId> order(lp.data.size());
            for (size_t i = 0; i < order.size(); ++i) {
                order[i] = static_cast<TokenId>(i);
            }
            std::sort(order.begin(), order.end(),
                      [&](TokenId a, TokenId b) {
                          if (lp[size_t(a)] != lp[size_t(b)]) {
                              return lp[size_t(a)] > lp[size_t(b)];
                          }
                          return a < b;
                      });
            const size_t take = std::min(cfg.beam_size, order.size());
            for (size_t i = 0; i < take; ++i) {
                Hypothesis next = hyp;
                next.ys.push_back(order[i]);
                next.log_prob += lp[size_t(order[i])];
                next.done = (order[i] == Tokenizer::kEos);
                candidates.push_back(std::move(next));
            }
        }
        if (!any_live) break;
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Hypothesis& a, const Hypothesis& b) {
                             return a.log_prob > b.log_prob;
                         });
        if (candidates.size() > cfg.beam_size) {
            candidates.resize(cfg.beam_size);
        }
        beam = std::move(candidates);
    }

    // Length-normalized pick over generated tokens (EOS included).
    const Hypothesis* best = nullptr;
    double best_score = 0.0;
    for (const Hypothesis& hyp : beam) {
        const double len =
            static_cast<double>(std::max<size_t>(1, hyp.ys.size() - 1));
        const double score = hyp.log_prob / len;
        if (!best || score > best_score) {
            best = &hyp;
            best_score = score;
        }
    }
    return best ? strip_specials(best->ys) : std::vector<TokenId>{};
}

}  // namespace

std::vector<TokenId> decode(const ModelParams& params,
                            const std::vector<TokenId>& src,
                            const DecodeConfig& cfg) {
    cfg.validate();
    if (src.size() > params.hp().max_len) {
        throw SequenceTooLong("source length " + std::to_string(src.size()) +
                              " exceeds max_len");
    }
    if (cfg.max_decode_len == 0) return {};
    if (cfg.mode == DecodeConfig::Mode::Greedy) {
        return decode_greedy(params, src, cfg);
    }
    return decode_beam(params, src, cfg);
}

}  // namespace wenyan
