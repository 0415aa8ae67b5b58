// SPDX-License-Identifier: Apache-2.0

#include "wenyan/align/lexicon.hpp"

#include <fstream>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/unicode.hpp"

namespace wenyan {

void Lexicon::add(std::u32string word) {
    if (word.empty()) throw ParseError("empty lexicon entry");
    max_word_len_ = std::max(max_word_len_, word.size());
    words_.insert(std::move(word));
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon: " + path);
    Lexicon lex;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lex.add(utf8_decode(line));
    }
    return lex;
}

Lexicon Lexicon::from_words(const std::vector<std::u32string>& words) {
    Lexicon lex;
    for (const auto& w : words) lex.add(w);
    return lex;
}

}  // namespace wenyan
