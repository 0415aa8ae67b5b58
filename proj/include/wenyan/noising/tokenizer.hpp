// SPDX-License-Identifier: Apache-2.0
//
// Character-level tokenizer. One token per Chinese character keeps the
// disyllabic substitution exact (1 token in, 2 tokens out) and the
// vocabulary small.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wenyan/corpus/record.hpp"

namespace wenyan {

using TokenId = int32_t;

class Tokenizer {
public:
    static constexpr TokenId kPad = 0;
    static constexpr TokenId kBos = 1;
    static constexpr TokenId kEos = 2;
    static constexpr TokenId kUnk = 3;
    static constexpr TokenId kMask = 4;
    static constexpr TokenId kNumSpecials = 5;

    // Vocabulary covers every distinct character on both sides; ids are
    // assigned by descending frequency, ties broken by code point.
    // Throws EmptyCorpus.
    static Tokenizer build(const std::vector<CorpusRecord>& corpus);

    TokenId encode_char(char32_t c) const {
        auto it = vocab_.find(c);
        return it == vocab_.end() ? kUnk : it->second;
    }
    std::vector<TokenId> encode(std::u32string_view text) const;

    // Specials carry no character; decode skips them.
    std::u32string decode(const std::vector<TokenId>& ids) const;

    char32_t id_to_char(TokenId id) const;  // content ids only
    static bool is_special(TokenId id) { return id >= 0 && id < kNumSpecials; }
    size_t size() const { return kNumSpecials + chars_.size(); }

    // "char<TAB>id" per line, specials (as <pad> etc.) listed first.
    void save(const std::string& path) const;
    static Tokenizer load(const std::string& path);

private:
    std::unordered_map<char32_t, TokenId> vocab_;
    std::vector<char32_t> chars_;  // chars_[i] has id kNumSpecials + i
};

}  // namespace wenyan
