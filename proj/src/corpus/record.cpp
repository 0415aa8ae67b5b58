// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/record.hpp"

#include <algorithm>
#include <cctype>

namespace wenyan {

namespace {
std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}
}  // namespace

bool record_labels_valid(const CorpusRecord& rec) {
    return rec.era.has_value() == (rec.category == Category::History);
}

std::string category_name(Category c) {
    switch (c) {
        case Category::History: return "History";
        case Category::Article: return "Article";
        case Category::Novel: return "Novel";
    }
    return "Article";
}

std::string era_name(Era e) {
    switch (e) {
        case Era::Old: return "Old";
        case Era::Middle: return "Middle";
        case Era::EarlyModern: return "EarlyModern";
    }
    return "Old";
}

std::optional<Category> parse_category(const std::string& s) {
    const std::string v = lower(s);
    if (v == "history") return Category::History;
    if (v == "article") return Category::Article;
    if (v == "novel") return Category::Novel;
    return std::nullopt;
}

std::optional<Era> parse_era(const std::string& s) {
    const std::string v = lower(s);
    if (v == "old") return Era::Old;
    if (v == "middle") return Era::Middle;
    if (v == "earlymodern" || v == "early_modern") return Era::EarlyModern;
    return std::nullopt;
}

}  // namespace wenyan
