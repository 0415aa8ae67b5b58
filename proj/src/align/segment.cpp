// SPDX-License-Identifier: Apache-2.0

#include "wenyan/align/segment.hpp"

namespace wenyan {

std::vector<WordSpan> segment_target(std::u32string_view y,
                                     const Lexicon& lex) {
    std::vector<WordSpan> spans;
    size_t pos = 0;
    while (pos < y.size()) {
        size_t best = 1;
        const size_t cap = std::min(lex.max_word_len(), y.size() - pos);
        for (size_t len = cap; len >= 2; --len) {
            if (lex.contains(std::u32string(y.substr(pos, len)))) {
                best = len;
                break;
            }
        }
        spans.push_back({pos, best});
        pos += best;
    }
    return spans;
}

}  // namespace wenyan
