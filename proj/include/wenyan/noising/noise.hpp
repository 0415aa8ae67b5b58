// SPDX-License-Identifier: Apache-2.0
//
// Training-instance construction: aligned-substitution examples and
// dual-masked examples. All randomness flows through an explicit Rng so
// instances are reproducible from (seed, record id).

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wenyan/align/aligner.hpp"
#include "wenyan/common/rng.hpp"
#include "wenyan/noising/tokenizer.hpp"

namespace wenyan {

struct NoiseConfig {
    double p_da = 0.7;  // per-pair substitution probability
    std::pair<double, double> enc_mask_range{0.1, 0.2};
    std::pair<double, double> dec_mask_range{0.2, 0.5};
    // mask / random replacement / keep
    std::array<double, 3> corrupt_probs{0.8, 0.1, 0.1};
    uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

struct DasExample {
    std::vector<TokenId> noised_src;   // substituted source, no BOS/EOS
    std::vector<TokenId> tgt;          // BOS + target + EOS
    std::vector<size_t> substituted;   // source character positions replaced
};

// Each alignment pair is substituted independently with probability p_da:
// the single source character becomes the two characters of its aligned
// target word.
DasExample make_das(std::u32string_view x, std::u32string_view y,
                    const AlignmentSet& alignment, const Tokenizer& tok,
                    const NoiseConfig& cfg, Rng& rng);

struct DmlmExample {
    std::vector<TokenId> masked_src;
    std::vector<size_t> src_mask_positions;  // sorted, duplicate-free
    std::vector<TokenId> src_originals;
    std::vector<TokenId> masked_tgt;
    std::vector<size_t> tgt_mask_positions;
    std::vector<TokenId> tgt_originals;
};

// Draws one mask ratio per side from its range, selects that share of the
// non-special positions uniformly without replacement, and corrupts each
// selected position: 80% MASK, 10% random non-special token, 10% kept
// as-is (still predicted). Throws SequenceTooShort when a side has no
// maskable position at all.
DmlmExample make_dmlm(const std::vector<TokenId>& x,
                      const std::vector<TokenId>& y, const Tokenizer& tok,
                      const NoiseConfig& cfg, Rng& rng);

std::string das_to_json(const DasExample& ex);
std::string dmlm_to_json(const DmlmExample& ex);

}  // namespace wenyan
