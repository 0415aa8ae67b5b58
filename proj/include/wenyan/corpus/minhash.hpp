// SPDX-License-Identifier: Apache-2.0
//
// MinHash sketches over character shingles. The fraction of positions where
// two signatures agree estimates the Jaccard similarity of the shingle sets.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wenyan {

struct MinHashSignature {
    std::vector<uint64_t> values;  // per-permutation minima; length num_perm
    uint32_t num_perm = 0;
    uint32_t shingle_size = 0;
    uint64_t seed = 0;
};

// Character n-gram shingles of the text. Empty result if text is shorter
// than the shingle size.
std::vector<std::u32string> shingles(std::u32string_view text,
                                     uint32_t shingle_size);

// Throws TextTooShort when length(text) < shingle_size.
MinHashSignature minhash_signature(std::u32string_view text, uint32_t num_perm,
                                   uint32_t shingle_size, uint64_t seed);

// Fraction of matching positions. Throws SignatureMismatch when the two
// signatures disagree on num_perm, shingle_size, or seed.
double estimate_similarity(const MinHashSignature& a,
                           const MinHashSignature& b);

}  // namespace wenyan
