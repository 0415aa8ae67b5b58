// SPDX-License-Identifier: Apache-2.0
//
// Word list backing the target-side segmenter.

#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace wenyan {

class Lexicon {
public:
    void add(std::u32string word);
    bool contains(const std::u32string& word) const {
        return words_.count(word) > 0;
    }
    size_t max_word_len() const { return max_word_len_; }
    size_t size() const { return words_.size(); }

    // UTF-8 file, one word per line, # comments and blank lines skipped.
    static Lexicon load(const std::string& path);
    static Lexicon from_words(const std::vector<std::u32string>& words);

private:
    std::unordered_set<std::u32string> words_;
    size_t max_word_len_ = 0;
};

}  // namespace wenyan
