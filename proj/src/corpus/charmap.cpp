// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/charmap.hpp"

#include <fstream>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/unicode.hpp"

namespace wenyan {

void CharMapTable::add(char32_t from, char32_t to) {
    if (from == to) {
        throw ParseError("identity entry in table '" + name_ + "': " +
                         utf8_encode(from));
    }
    entries_[from] = to;
}

void CharMapTable::finalize() {
    for (auto& [from, to] : entries_) {
        char32_t cur = to;
        size_t hops = 0;
        while (true) {
            auto it = entries_.find(cur);
            if (it == entries_.end()) break;
            cur = it->second;
            if (++hops > entries_.size()) {
                throw ParseError("mapping cycle in table '" + name_ +
                                 "' starting at " + utf8_encode(from));
            }
        }
        to = cur;
    }
    values_.clear();
    for (const auto& [from, to] : entries_) values_.insert(to);
    for (char32_t v : values_) {
        if (entries_.count(v) > 0) {
            throw ParseError("table '" + name_ + "' value is also a key: " +
                             utf8_encode(v));
        }
    }
}

CharMapTable CharMapTable::load(const std::string& path, std::string name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open mapping table: " + path);
    CharMapTable table(std::move(name));
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected two tab-separated columns");
        }
        const std::u32string from = utf8_decode(line.substr(0, tab));
        const std::u32string to = utf8_decode(line.substr(tab + 1));
        if (from.size() != 1 || to.size() != 1) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": each column must be a single character");
        }
        table.add(from[0], to[0]);
    }
    table.finalize();
    return table;
}

CharMapTable CharMapTable::from_pairs(
    const std::vector<std::pair<char32_t, char32_t>>& pairs,
    std::string name) {
    CharMapTable table(std::move(name));
    for (const auto& [from, to] : pairs) table.add(from, to);
    table.finalize();
    return table;
}

}  // namespace wenyan
