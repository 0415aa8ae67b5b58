// SPDX-License-Identifier: Apache-2.0
//
// Monosyllabic-to-disyllabic alignment: pairs a source character with a
// two-character target word that shares a character with it, scanning both
// sides left to right so the result is strictly monotonic.

#pragma once

#include <string>
#include <vector>

#include "wenyan/align/lexicon.hpp"
#include "wenyan/align/segment.hpp"
#include "wenyan/corpus/record.hpp"

namespace wenyan {

struct AlignPair {
    size_t src_index = 0;  // character position in x
    size_t tgt_start = 0;  // start offset of the disyllabic word in y
    bool operator==(const AlignPair&) const = default;
};

struct AlignmentSet {
    std::vector<AlignPair> pairs;
    bool empty() const { return pairs.empty(); }
};

// Greedy left-to-right matching over the target segmentation. A segment
// qualifies for source position i when it is exactly two characters long,
// shares a character with x[i], and does not occur as a substring of x
// (words already present in the source are likely proper nouns and stay).
// Each source position takes the leftmost unconsumed qualifying segment to
// the right of the previously matched one.
AlignmentSet align_pair(std::u32string_view x, std::u32string_view y,
                        const std::vector<WordSpan>& segments);

// Checks every structural invariant of an AlignmentSet against its pair of
// sentences; used by tests and pipeline audits.
bool alignment_valid(const AlignmentSet& alignment, std::u32string_view x,
                     std::u32string_view y);

struct CoverageReport {
    double pct_pairs_with_alignment = 0.0;  // records with >= 1 pair
    double mean_src_char_aligned = 0.0;     // mean fraction of x aligned
};

// Throws EmptyCorpus on an empty input; requires parallel records.
CoverageReport alignment_coverage(const std::vector<CorpusRecord>& corpus,
                                  const Lexicon& lex);

std::string alignment_to_json(const std::string& id,
                              const AlignmentSet& alignment);

}  // namespace wenyan
