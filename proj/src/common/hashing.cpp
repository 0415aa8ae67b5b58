// SPDX-License-Identifier: Apache-2.0

#include "wenyan/common/hashing.hpp"

namespace wenyan {

std::string to_hex(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace wenyan
