// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random stream. std::mt19937_64 output is fully specified by
// the standard; the distributions here are hand-rolled because the standard
// library ones are implementation-defined and would break cross-platform
// reproducibility of seeds.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wenyan {

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), unbiased via rejection.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // First k elements of a Fisher-Yates shuffle over {0, ..., n-1}.
    std::vector<size_t> sample_without_replacement(size_t n, size_t k);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

// Derives an independent substream for a keyed unit of work (seed, key), so
// per-record noise does not depend on processing order.
uint64_t derive_stream_seed(uint64_t seed, const std::string& key);

}  // namespace wenyan
