// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/minhash.hpp"

#include <limits>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/hashing.hpp"

namespace wenyan {

namespace {

// Per-permutation parameters. Multiply-add with an odd multiplier is a
// bijection on 64-bit values, so each permutation reorders the hash space.
struct Perm {
    uint64_t mul;
    uint64_t add;
};

std::vector<Perm> make_perms(uint32_t num_perm, uint64_t seed) {
    std::vector<Perm> perms(num_perm);
    uint64_t state = splitmix64(seed);
    for (uint32_t i = 0; i < num_perm; ++i) {
        state = splitmix64(state);
        perms[i].mul = state | 1ULL;
        state = splitmix64(state);
        perms[i].add = state;
    }
    return perms;
}

}  // namespace

std::vector<std::u32string> shingles(std::u32string_view text,
                                     uint32_t shingle_size) {
    std::vector<std::u32string> out;
    if (shingle_size == 0 || text.size() < shingle_size) return out;
    out.reserve(text.size() - shingle_size + 1);
    for (size_t i = 0; i + shingle_size <= text.size(); ++i) {
        out.emplace_back(text.substr(i, shingle_size));
    }
    return out;
}

MinHashSignature minhash_signature(std::u32string_view text, uint32_t num_perm,
                                   uint32_t shingle_size, uint64_t seed) {
    if (text.size() < shingle_size) {
        throw TextTooShort("text length " + std::to_string(text.size()) +
                           " < shingle size " + std::to_string(shingle_size));
    }
    MinHashSignature sig;
    sig.num_perm = num_perm;
    sig.shingle_size = shingle_size;
    sig.seed = seed;
    sig.values.assign(num_perm, std::numeric_limits<uint64_t>::max());

    const auto perms = make_perms(num_perm, seed);
    for (size_t i = 0; i + shingle_size <= text.size(); ++i) {
        const uint64_t base =
            splitmix64(fnv1a(text.substr(i, shingle_size)));
        for (uint32_t p = 0; p < num_perm; ++p) {
            const uint64_t h = perms[p].mul * base + perms[p].add;
            if (h < sig.values[p]) sig.values[p] = h;
        }
    }
    return sig;
}

double estimate_similarity(const MinHashSignature& a,
                           const MinHashSignature& b) {
    if (a.num_perm != b.num_perm || a.shingle_size != b.shingle_size ||
        a.seed != b.seed) {
        throw SignatureMismatch("signatures built with different parameters");
    }
    if (a.num_perm == 0) return 0.0;
    size_t matches = 0;
    for (uint32_t i = 0; i < a.num_perm; ++i) {
        if (a.values[i] == b.values[i]) ++matches;
    }
    return static_cast<double>(matches) / a.num_perm;
}

}  // namespace wenyan
