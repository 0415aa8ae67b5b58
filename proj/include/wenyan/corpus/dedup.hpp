// SPDX-License-Identifier: Apache-2.0
//
// Near-duplicate removal. Records whose estimated similarity reaches the
// threshold collapse into clusters; the record with the smallest id
// represents each cluster.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wenyan/corpus/record.hpp"

namespace wenyan {

// Which text the signatures are computed from.
enum class DedupField { Source, Target, Both };

struct DedupOptions {
    double threshold = 0.5;  // pairs at or above collapse to one copy
    uint32_t num_perm = 128;
    uint32_t shingle_size = 4;
    uint64_t seed = 0;
    DedupField field = DedupField::Source;
    // All-pairs comparison by default; banding trades exhaustiveness for
    // speed on large corpora (near-threshold pairs can be missed).
    bool use_lsh = false;
    uint32_t lsh_bands = 16;
};

struct DuplicatePair {
    std::string kept;
    std::string dropped;
    double similarity;
};

struct DedupResult {
    std::vector<CorpusRecord> kept;      // input order preserved
    std::vector<DuplicatePair> dropped;  // one entry per removed record
};

DedupResult deduplicate(const std::vector<CorpusRecord>& records,
                        const DedupOptions& opts);

}  // namespace wenyan
