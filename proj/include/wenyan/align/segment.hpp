// SPDX-License-Identifier: Apache-2.0
//
// Forward-maximum-matching segmenter: at each position take the longest
// lexicon word, falling back to a single character. Spans always partition
// the input exactly.

#pragma once

#include <string>
#include <vector>

#include "wenyan/align/lexicon.hpp"

namespace wenyan {

struct WordSpan {
    size_t start = 0;
    size_t len = 0;
    bool operator==(const WordSpan&) const = default;
};

std::vector<WordSpan> segment_target(std::u32string_view y, const Lexicon& lex);

}  // namespace wenyan
