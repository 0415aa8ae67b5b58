// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/record_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/unicode.hpp"

namespace wenyan {

namespace {

using nlohmann::json;

CorpusRecord record_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("record is not a JSON object");
    CorpusRecord rec;
    if (!j.contains("id") || !j["id"].is_string()) {
        throw ParseError("missing string field 'id'");
    }
    rec.id = j["id"].get<std::string>();
    if (!j.contains("src") || !j["src"].is_string()) {
        throw ParseError("missing string field 'src'");
    }
    rec.source = utf8_decode(j["src"].get<std::string>());
    if (j.contains("tgt") && !j["tgt"].is_null()) {
        if (!j["tgt"].is_string()) throw ParseError("'tgt' must be a string");
        rec.target = utf8_decode(j["tgt"].get<std::string>());
    }
    if (j.contains("category") && !j["category"].is_null()) {
        auto cat = parse_category(j["category"].get<std::string>());
        if (!cat) {
            throw ParseError("unknown category '" +
                             j["category"].get<std::string>() + "'");
        }
        rec.category = *cat;
    }
    if (j.contains("era") && !j["era"].is_null()) {
        auto era = parse_era(j["era"].get<std::string>());
        if (!era) {
            throw ParseError("unknown era '" + j["era"].get<std::string>() +
                             "'");
        }
        rec.era = era;
    }
    if (j.contains("origin") && !j["origin"].is_null()) {
        rec.origin = j["origin"].get<std::string>();
    }
    if (!record_labels_valid(rec)) {
        throw ParseError(
            "era must be present exactly when category is History");
    }
    return rec;
}

}  // namespace

JsonlReadResult parse_jsonl(std::istream& in) {
    JsonlReadResult result;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            result.records.push_back(record_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            result.errors.push_back({line_no, e.what()});
        } catch (const ParseError& e) {
            result.errors.push_back({line_no, e.what()});
        }
    }
    return result;
}

JsonlReadResult read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);
    return parse_jsonl(in);
}

std::string record_to_json(const CorpusRecord& rec) {
    json j;
    j["id"] = rec.id;
    j["src"] = utf8_encode(rec.source);
    if (rec.target) j["tgt"] = utf8_encode(*rec.target);
    j["category"] = category_name(rec.category);
    if (rec.era) j["era"] = era_name(*rec.era);
    j["origin"] = rec.origin;
    return j.dump();
}

void write_jsonl(const std::vector<CorpusRecord>& records,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write corpus file: " + path);
    for (const auto& rec : records) out << record_to_json(rec) << '\n';
}

std::vector<CorpusRecord> read_plain(const std::string& path,
                                     const std::string& id_prefix,
                                     const std::string& origin,
                                     Category category,
                                     std::optional<Era> era) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open text file: " + path);
    std::vector<CorpusRecord> records;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        CorpusRecord rec;
        rec.id = id_prefix + "-" + std::to_string(line_no);
        rec.source = utf8_decode(line);
        rec.category = category;
        rec.era = era;
        rec.origin = origin;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace wenyan
