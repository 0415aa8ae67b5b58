// SPDX-License-Identifier: Apache-2.0
//
// Corpus file formats: JSON-lines records and plain one-sentence-per-line
// text. Malformed lines are reported with their line number and skipped so
// a single straggler never aborts a corpus run.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wenyan/corpus/record.hpp"

namespace wenyan {

struct LineError {
    size_t line_no;
    std::string message;
};

struct JsonlReadResult {
    std::vector<CorpusRecord> records;
    std::vector<LineError> errors;
};

JsonlReadResult parse_jsonl(std::istream& in);
JsonlReadResult read_jsonl(const std::string& path);

std::string record_to_json(const CorpusRecord& rec);
void write_jsonl(const std::vector<CorpusRecord>& records,
                 const std::string& path);

// Monolingual plain text: one sentence per line, blank lines skipped.
// Record ids are "<id_prefix>-<line_no>".
std::vector<CorpusRecord> read_plain(const std::string& path,
                                     const std::string& id_prefix,
                                     const std::string& origin,
                                     Category category = Category::Article,
                                     std::optional<Era> era = std::nullopt);

}  // namespace wenyan
