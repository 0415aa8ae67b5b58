// SPDX-License-Identifier: Apache-2.0

#include "wenyan/align/aligner.hpp"

#include <nlohmann/json.hpp>

#include "wenyan/common/errors.hpp"

namespace wenyan {

AlignmentSet align_pair(std::u32string_view x, std::u32string_view y,
                        const std::vector<WordSpan>& segments) {
    AlignmentSet result;
    size_t next_seg = 0;
    for (size_t i = 0; i < x.size() && next_seg < segments.size(); ++i) {
        const char32_t c = x[i];
        for (size_t j = next_seg; j < segments.size(); ++j) {
            const WordSpan& span = segments[j];
            if (span.len != 2) continue;
            const std::u32string_view word = y.substr(span.start, 2);
            if (word[0] != c && word[1] != c) continue;
            if (x.find(word) != std::u32string_view::npos) continue;
            result.pairs.push_back({i, span.start});
            next_seg = j + 1;
            break;
        }
    }
    return result;
}

bool alignment_valid(const AlignmentSet& alignment, std::u32string_view x,
                     std::u32string_view y) {
    size_t prev_src = 0, prev_tgt = 0;
    bool first = true;
    for (const AlignPair& p : alignment.pairs) {
        if (p.src_index >= x.size()) return false;
        if (p.tgt_start + 2 > y.size()) return false;
        if (!first) {
            if (p.src_index <= prev_src) return false;
            if (p.tgt_start <= prev_tgt) return false;
            if (p.tgt_start < prev_tgt + 2) return false;  // span overlap
        }
        const std::u32string_view word = y.substr(p.tgt_start, 2);
        if (word[0] != x[p.src_index] && word[1] != x[p.src_index]) {
            return false;
        }
        prev_src = p.src_index;
        prev_tgt = p.tgt_start;
        first = false;
    }
    return true;
}

CoverageReport alignment_coverage(const std::vector<CorpusRecord>& corpus,
                                  const Lexicon& lex) {
    if (corpus.empty()) throw EmptyCorpus("alignment coverage over no records");
    size_t with_alignment = 0;
    double fraction_sum = 0.0;
    for (const auto& rec : corpus) {
        if (!rec.target) {
            throw ConfigError("alignment coverage requires parallel records: " +
                              rec.id);
        }
        const auto segments = segment_target(*rec.target, lex);
        const AlignmentSet alignment =
            align_pair(rec.source, *rec.target, segments);
        if (!alignment.empty()) ++with_alignment;
        if (!rec.source.empty()) {
            fraction_sum += static_cast<double>(alignment.pairs.size()) /
                            static_cast<double>(rec.source.size());
        }
    }
    CoverageReport report;
    report.pct_pairs_with_alignment =
        static_cast<double>(with_alignment) / corpus.size();
    report.mean_src_char_aligned = fraction_sum / corpus.size();
    return report;
}

std::string alignment_to_json(const std::string& id,
                              const AlignmentSet& alignment) {
    nlohmann::json j;
    j["id"] = id;
    auto pairs = nlohmann::json::array();
    for (const AlignPair& p : alignment.pairs) {
        pairs.push_back({p.src_index, p.tgt_start});
    }
    j["pairs"] = pairs;
    return j.dump();
}

}  // namespace wenyan
