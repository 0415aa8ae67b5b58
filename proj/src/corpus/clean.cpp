// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/clean.hpp"

namespace wenyan {

const std::u32string& allowed_punctuation() {
    static const std::u32string set = U"，。、；：？！“”‘’《》";
    return set;
}

bool is_cjk(char32_t c, const CleanConfig& cfg) {
    for (const auto& [lo, hi] : cfg.cjk_ranges) {
        if (c >= lo && c <= hi) return true;
    }
    return false;
}

std::u32string clean_text(std::u32string_view raw, const CharMapTable& trad_map,
                          const CharMapTable& punct_map,
                          const CleanConfig& cfg) {
    const std::u32string& punct = allowed_punctuation();
    std::u32string out;
    out.reserve(raw.size());
    for (char32_t c : raw) {
        c = punct_map.apply(trad_map.apply(c));
        if (is_cjk(c, cfg) || punct.find(c) != std::u32string::npos ||
            punct_map.has_value(c)) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace wenyan
