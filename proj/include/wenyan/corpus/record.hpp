// SPDX-License-Identifier: Apache-2.0
//
// Corpus records: one monolingual sentence or one ancient-modern pair, with
// the category/era labels used to organize the collection.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wenyan {

enum class Category { History, Article, Novel };

// Chronological subdivision; applies to History records only.
enum class Era { Old, Middle, EarlyModern };

struct CorpusRecord {
    std::string id;
    std::u32string source;                 // ancient side
    std::optional<std::u32string> target;  // modern side; absent = monolingual
    Category category = Category::Article;
    std::optional<Era> era;
    std::string origin;

    bool is_parallel() const { return target.has_value(); }
};

// era present iff category == History.
bool record_labels_valid(const CorpusRecord& rec);

std::string category_name(Category c);
std::string era_name(Era e);
std::optional<Category> parse_category(const std::string& s);
std::optional<Era> parse_era(const std::string& s);

}  // namespace wenyan
