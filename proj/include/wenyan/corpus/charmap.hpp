// SPDX-License-Identifier: Apache-2.0
//
// Single-character rewrite tables (traditional -> simplified, punctuation
// unification). Tables are closed under application: every value is a fixed
// point, so applying a table twice equals applying it once.

#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace wenyan {

class CharMapTable {
public:
    CharMapTable() = default;
    explicit CharMapTable(std::string name) : name_(std::move(name)) {}

    // Inserts a mapping. Identity entries are rejected with ParseError;
    // chains (a->b while b->c already present) are resolved to a->c at
    // finalize().
    void add(char32_t from, char32_t to);

    // Resolves chained entries to their terminal character and validates the
    // fixed-point invariant. Throws ParseError on mapping cycles.
    void finalize();

    char32_t apply(char32_t c) const {
        auto it = entries_.find(c);
        return it == entries_.end() ? c : it->second;
    }

    bool has_value(char32_t c) const { return values_.count(c) > 0; }
    size_t size() const { return entries_.size(); }
    const std::string& name() const { return name_; }
    const std::unordered_map<char32_t, char32_t>& entries() const {
        return entries_;
    }

    // UTF-8 file, one "from<TAB>to" pair per line, # comments allowed.
    static CharMapTable load(const std::string& path, std::string name);
    static CharMapTable from_pairs(
        const std::vector<std::pair<char32_t, char32_t>>& pairs,
        std::string name);

private:
    std::string name_;
    std::unordered_map<char32_t, char32_t> entries_;
    std::unordered_set<char32_t> values_;
};

}  // namespace wenyan
