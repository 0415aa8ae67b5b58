// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/stats.hpp"

#include <nlohmann/json.hpp>

namespace wenyan {

StatsReport corpus_stats(const std::vector<CorpusRecord>& records) {
    StatsReport r;
    size_t target_sides = 0;
    for (const auto& rec : records) {
        ++r.record_count;
        r.source_chars += rec.source.size();
        r.per_category[category_name(rec.category)] += 1;
        if (rec.era) r.per_era[era_name(*rec.era)] += 1;
        if (rec.target) {
            ++r.parallel_count;
            ++target_sides;
            r.target_chars += rec.target->size();
        }
    }
    if (r.record_count > 0) {
        r.avg_source_len =
            static_cast<double>(r.source_chars) / r.record_count;
    }
    if (target_sides > 0) {
        r.avg_target_len = static_cast<double>(r.target_chars) / target_sides;
    }
    return r;
}

std::string stats_to_json(const StatsReport& report) {
    nlohmann::json j;
    j["record_count"] = report.record_count;
    j["parallel_count"] = report.parallel_count;
    j["source_chars"] = report.source_chars;
    j["target_chars"] = report.target_chars;
    if (report.avg_source_len) {
        j["avg_source_len"] = *report.avg_source_len;
    } else {
        j["avg_source_len"] = nullptr;
    }
    if (report.avg_target_len) {
        j["avg_target_len"] = *report.avg_target_len;
    } else {
        j["avg_target_len"] = nullptr;
    }
    j["per_category"] = report.per_category;
    j["per_era"] = report.per_era;
    return j.dump(2);
}

}  // namespace wenyan
