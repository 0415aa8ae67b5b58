// SPDX-License-Identifier: Apache-2.0

#include "wenyan/common/rng.hpp"

#include <numeric>
#include <string>

#include "wenyan/common/hashing.hpp"

namespace wenyan {

std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
    if (k > n) k = n;
    std::vector<size_t> pool(n);
    std::iota(pool.begin(), pool.end(), size_t{0});
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

uint64_t derive_stream_seed(uint64_t seed, const std::string& key) {
    return splitmix64(seed ^ fnv1a(key));
}

}  // namespace wenyan
