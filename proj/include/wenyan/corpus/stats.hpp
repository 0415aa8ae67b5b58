// SPDX-License-Identifier: Apache-2.0
//
// Corpus-level statistics: counts, character totals, average sentence
// lengths per side, and category/era breakdowns.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wenyan/corpus/record.hpp"

namespace wenyan {

struct StatsReport {
    size_t record_count = 0;
    size_t parallel_count = 0;  // records with a target side
    size_t source_chars = 0;
    size_t target_chars = 0;
    // Arithmetic means over non-absent sides; absent for an empty corpus.
    std::optional<double> avg_source_len;
    std::optional<double> avg_target_len;
    std::map<std::string, size_t> per_category;
    std::map<std::string, size_t> per_era;  // History records only
};

StatsReport corpus_stats(const std::vector<CorpusRecord>& records);

std::string stats_to_json(const StatsReport& report);

}  // namespace wenyan
