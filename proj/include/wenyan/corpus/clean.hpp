// SPDX-License-Identifier: Apache-2.0
//
// Text cleaning: apply character rewrite tables, then keep only CJK
// ideographs and the unified punctuation set. Idempotent by construction.

#pragma once

#include <string>
#include <vector>

#include "wenyan/corpus/charmap.hpp"

namespace wenyan {

struct CleanConfig {
    // Inclusive code point ranges accepted as Chinese characters.
    // Defaults: CJK Unified Ideographs + Extension A.
    std::vector<std::pair<char32_t, char32_t>> cjk_ranges = {
        {0x4E00, 0x9FFF},
        {0x3400, 0x4DBF},
    };
};

// The unified punctuation set kept after cleaning, in addition to the values
// of the punctuation table.
const std::u32string& allowed_punctuation();

bool is_cjk(char32_t c, const CleanConfig& cfg = {});

// Maps each character through trad_map then punct_map, then drops everything
// that is neither CJK nor allowed punctuation. Mapping runs before the
// filter, so punctuation rewritten into the unified set survives.
std::u32string clean_text(std::u32string_view raw, const CharMapTable& trad_map,
                          const CharMapTable& punct_map,
                          const CleanConfig& cfg = {});

}  // namespace wenyan
