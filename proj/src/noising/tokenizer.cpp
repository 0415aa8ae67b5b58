// SPDX-License-Identifier: Apache-2.0

#include "wenyan/noising/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/unicode.hpp"

namespace wenyan {

namespace {
const char* kSpecialNames[] = {"<pad>", "<bos>", "<eos>", "<unk>", "<mask>"};
}

Tokenizer Tokenizer::build(const std::vector<CorpusRecord>& corpus) {
    if (corpus.empty()) throw EmptyCorpus("tokenizer build over no records");
    std::map<char32_t, size_t> freq;  // ordered: code point tie-break for free
    for (const auto& rec : corpus) {
        for (char32_t c : rec.source) freq[c] += 1;
        if (rec.target) {
            for (char32_t c : *rec.target) freq[c] += 1;
        }
    }
    std::vector<std::pair<char32_t, size_t>> by_freq(freq.begin(), freq.end());
    std::stable_sort(by_freq.begin(), by_freq.end(),
                     [](const auto& a, const auto& b) {
                         return a.second > b.second;
                     });
    Tokenizer tok;
    tok.chars_.reserve(by_freq.size());
    for (const auto& [c, count] : by_freq) {
        tok.vocab_[c] = static_cast<TokenId>(kNumSpecials + tok.chars_.size());
        tok.chars_.push_back(c);
    }
    return tok;
}

std::vector<TokenId> Tokenizer::encode(std::u32string_view text) const {
    std::vector<TokenId> ids;
    ids.reserve(text.size());
    for (char32_t c : text) ids.push_back(encode_char(c));
    return ids;
}

std::u32string Tokenizer::decode(const std::vector<TokenId>& ids) const {
    std::u32string out;
    out.reserve(ids.size());
    for (TokenId id : ids) {
        if (!is_special(id)) out.push_back(id_to_char(id));
    }
    return out;
}

char32_t Tokenizer::id_to_char(TokenId id) const {
    const size_t idx = static_cast<size_t>(id) - kNumSpecials;
    if (is_special(id) || idx >= chars_.size()) {
        throw ParseError("token id " + std::to_string(id) +
                         " has no character");
    }
    return chars_[idx];
}

void Tokenizer::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write tokenizer: " + path);
    for (TokenId i = 0; i < kNumSpecials; ++i) {
        out << kSpecialNames[i] << '\t' << i << '\n';
    }
    for (size_t i = 0; i < chars_.size(); ++i) {
        out << utf8_encode(chars_[i]) << '\t' << (kNumSpecials + i) << '\n';
    }
}

Tokenizer Tokenizer::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open tokenizer: " + path);
    Tokenizer tok;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected char<TAB>id");
        }
        const std::string token = line.substr(0, tab);
        const TokenId id = static_cast<TokenId>(std::stol(line.substr(tab + 1)));
        if (id < kNumSpecials) continue;  // specials are positional
        const std::u32string c = utf8_decode(token);
        if (c.size() != 1) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": token must be a single character");
        }
        const size_t idx = static_cast<size_t>(id) - kNumSpecials;
        if (tok.chars_.size() <= idx) tok.chars_.resize(idx + 1, U'\0');
        tok.chars_[idx] = c[0];
        tok.vocab_[c[0]] = id;
    }
    return tok;
}

}  // namespace wenyan
