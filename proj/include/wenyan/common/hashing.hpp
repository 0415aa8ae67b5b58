// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wenyan {

constexpr uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr uint64_t kFnvPrime = 1099511628211ULL;

inline uint64_t fnv1a(const void* data, size_t len, uint64_t h = kFnvOffset) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

inline uint64_t fnv1a(std::string_view s, uint64_t h = kFnvOffset) {
    return fnv1a(s.data(), s.size(), h);
}

inline uint64_t fnv1a(std::u32string_view s, uint64_t h = kFnvOffset) {
    for (char32_t cp : s) {
        uint32_t v = cp;
        h = fnv1a(&v, sizeof(v), h);
    }
    return h;
}

// splitmix64 finalizer; full-period mixer used to seed and whiten streams.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string to_hex(uint64_t v);

}  // namespace wenyan
