// SPDX-License-Identifier: Apache-2.0
//
// Corpus-level BLEU over token sequences (character tokens for Chinese):
// clipped n-gram precisions, geometric mean, multiplicative brevity
// penalty. Unsmoothed at corpus level, so any zero precision zeroes the
// score.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace wenyan {

using TokenSeq = std::vector<int32_t>;

struct BleuReport {
    double corpus_bleu = 0.0;  // [0, 100]
    std::vector<double> ngram_precisions;  // index n-1, n = 1..max_n
    double brevity_penalty = 1.0;          // (0, 1]
    size_t candidate_len = 0;
    size_t reference_len = 0;
    // Reserved metric slot; filling it needs an external contextual
    // encoder, which this toolkit does not ship.
    std::optional<double> bertscore;
};

// One reference per candidate. Throws LengthMismatch when the lists differ
// in size and EmptyInput when they are empty.
BleuReport bleu(const std::vector<TokenSeq>& candidates,
                const std::vector<TokenSeq>& references, int max_n = 4);

// Per-sentence diagnostic score with add-one smoothing on the 2..max_n
// gram precisions.
double sentence_bleu(const TokenSeq& candidate, const TokenSeq& reference,
                     int max_n = 4);

}  // namespace wenyan
