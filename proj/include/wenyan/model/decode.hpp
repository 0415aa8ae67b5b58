// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "wenyan/model/transformer.hpp"

namespace wenyan {

struct DecodeConfig {
    enum class Mode { Greedy, Beam };
    Mode mode = Mode::Greedy;
    size_t beam_size = 1;
    size_t max_decode_len = 64;

    void validate() const;  // beam_size == 1 exactly when mode is Greedy
};

// Generates target tokens for a source sentence. Greedy takes the argmax
// each step until EOS or the length cap; beam search is length-normalized.
// The returned sequence excludes BOS and EOS.
std::vector<TokenId> decode(const ModelParams& params,
                            const std::vector<TokenId>& src,
                            const DecodeConfig& cfg);

}  // namespace wenyan
