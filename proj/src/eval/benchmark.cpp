// SPDX-License-Identifier: Apache-2.0

#include "wenyan/eval/benchmark.hpp"

#include <unordered_set>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/rng.hpp"

namespace wenyan {

std::vector<BenchmarkSplit> build_benchmark(const std::vector<NamedSet>& sets,
                                            uint64_t seed) {
    std::vector<BenchmarkSplit> splits;
    splits.reserve(sets.size());
    for (const NamedSet& set : sets) {
        if (set.records.empty()) {
            throw EmptySet("benchmark set '" + set.name + "' is empty");
        }
        std::vector<CorpusRecord> shuffled = set.records;
        Rng rng(derive_stream_seed(seed, "benchmark#" + set.name));
        rng.shuffle(shuffled);

        const size_t n = shuffled.size();
        const size_t n_train = n * 8 / 10;  // floor(0.8 n)
        const size_t remainder = n - n_train;
        const size_t n_valid = remainder / 2;

        BenchmarkSplit split;
        split.name = set.name;
        split.train.assign(shuffled.begin(),
                           shuffled.begin() + static_cast<ptrdiff_t>(n_train));
        split.valid.assign(
            shuffled.begin() + static_cast<ptrdiff_t>(n_train),
            shuffled.begin() + static_cast<ptrdiff_t>(n_train + n_valid));
        split.test.assign(
            shuffled.begin() + static_cast<ptrdiff_t>(n_train + n_valid),
            shuffled.end());
        splits.push_back(std::move(split));
    }
    return splits;
}

std::vector<CorpusRecord> exclude_benchmark_records(
    const std::vector<CorpusRecord>& corpus,
    const std::vector<BenchmarkSplit>& benchmark) {
    std::unordered_set<std::string> benchmark_ids;
    for (const BenchmarkSplit& split : benchmark) {
        for (const auto* part : {&split.train, &split.valid, &split.test}) {
            for (const CorpusRecord& rec : *part) {
                benchmark_ids.insert(rec.id);
            }
        }
    }
    std::vector<CorpusRecord> kept;
    kept.reserve(corpus.size());
    for (const CorpusRecord& rec : corpus) {
        if (benchmark_ids.count(rec.id) == 0) kept.push_back(rec);
    }
    return kept;
}

}  // namespace wenyan
