// SPDX-License-Identifier: Apache-2.0
//
// Benchmark construction: per-set deterministic shuffle and 8:1:1 split.
// Benchmark records must be excluded from any multitask training corpus;
// exclude_benchmark_records does that filtering.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wenyan/corpus/record.hpp"

namespace wenyan {

struct BenchmarkSplit {
    std::string name;
    std::vector<CorpusRecord> train;
    std::vector<CorpusRecord> valid;
    std::vector<CorpusRecord> test;

    size_t total() const { return train.size() + valid.size() + test.size(); }
};

struct NamedSet {
    std::string name;
    std::vector<CorpusRecord> records;
};

// Split sizes: train = floor(0.8 n); the remainder halves into valid/test
// with the odd record going to test. This reproduces the published
// benchmark row counts exactly. Throws EmptySet on an empty input set.
std::vector<BenchmarkSplit> build_benchmark(const std::vector<NamedSet>& sets,
                                            uint64_t seed);

// Records whose id appears in any split of the benchmark are removed.
std::vector<CorpusRecord> exclude_benchmark_records(
    const std::vector<CorpusRecord>& corpus,
    const std::vector<BenchmarkSplit>& benchmark);

}  // namespace wenyan
