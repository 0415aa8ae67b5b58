// SPDX-License-Identifier: Apache-2.0

#include "wenyan/corpus/dedup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/hashing.hpp"
#include "wenyan/corpus/minhash.hpp"

namespace wenyan {

namespace {

std::u32string compare_text(const CorpusRecord& rec, DedupField field) {
    switch (field) {
        case DedupField::Source: return rec.source;
        case DedupField::Target: return rec.target.value_or(U"");
        case DedupField::Both:
            return rec.source + rec.target.value_or(U"");
    }
    return rec.source;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), size_t{0});
    }
    size_t find(size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

uint64_t band_key(const MinHashSignature& sig, uint32_t band, uint32_t rows) {
    uint64_t h = kFnvOffset;
    for (uint32_t r = band * rows; r < (band + 1) * rows; ++r) {
        h = fnv1a(&sig.values[r], sizeof(uint64_t), h);
    }
    return h;
}

}  // namespace

DedupResult deduplicate(const std::vector<CorpusRecord>& records,
                        const DedupOptions& opts) {
    if (opts.threshold <= 0.0 || opts.threshold > 1.0) {
        throw ConfigError("dedup threshold must be in (0, 1]");
    }
    const size_t n = records.size();
    std::vector<std::u32string> texts(n);
    std::vector<MinHashSignature> sigs(n);
    std::vector<bool> has_sig(n, false);
    for (size_t i = 0; i < n; ++i) {
        texts[i] = compare_text(records[i], opts.field);
        if (texts[i].size() >= opts.shingle_size) {
            sigs[i] = minhash_signature(texts[i], opts.num_perm,
                                        opts.shingle_size, opts.seed);
            has_sig[i] = true;
        }
    }

    UnionFind uf(n);

    // Texts shorter than one shingle carry no sketch; they deduplicate by
    // exact equality only.
    {
        std::unordered_map<uint64_t, std::vector<size_t>> short_groups;
        for (size_t i = 0; i < n; ++i) {
            if (!has_sig[i]) short_groups[fnv1a(texts[i])].push_back(i);
        }
        for (const auto& [key, members] : short_groups) {
            for (size_t k = 1; k < members.size(); ++k) {
                if (texts[members[k]] == texts[members[0]]) {
                    uf.unite(members[k], members[0]);
                }
            }
        }
    }

    auto link_if_similar = [&](size_t i, size_t j) {
        if (estimate_similarity(sigs[i], sigs[j]) >= opts.threshold) {
            uf.unite(i, j);
        }
    };

    if (opts.use_lsh && opts.num_perm % opts.lsh_bands == 0 &&
        opts.lsh_bands > 0) {
        const uint32_t rows = opts.num_perm / opts.lsh_bands;
        for (uint32_t b = 0; b < opts.lsh_bands; ++b) {
            std::unordered_map<uint64_t, std::vector<size_t>> buckets;
            for (size_t i = 0; i < n; ++i) {
                if (has_sig[i]) buckets[band_key(sigs[i], b, rows)].push_back(i);
            }
            for (const auto& [key, members] : buckets) {
                for (size_t a = 0; a < members.size(); ++a) {
                    for (size_t c = a + 1; c < members.size(); ++c) {
                        link_if_similar(members[a], members[c]);
                    }
                }
            }
        }
    } else {
        for (size_t i = 0; i < n; ++i) {
            if (!has_sig[i]) continue;
            for (size_t j = i + 1; j < n; ++j) {
                if (has_sig[j]) link_if_similar(i, j);
            }
        }
    }

    // Cluster representative: lexicographically smallest id.
    std::unordered_map<size_t, size_t> rep;  // root -> index of kept record
    for (size_t i = 0; i < n; ++i) {
        const size_t root = uf.find(i);
        auto it = rep.find(root);
        if (it == rep.end() || records[i].id < records[it->second].id) {
            rep[root] = i;
        }
    }

    DedupResult result;
    for (size_t i = 0; i < n; ++i) {
        const size_t keeper = rep[uf.find(i)];
        if (keeper == i) {
            result.kept.push_back(records[i]);
        } else {
            double sim = 1.0;
            if (has_sig[i] && has_sig[keeper]) {
                sim = estimate_similarity(sigs[keeper], sigs[i]);
            }
            result.dropped.push_back(
                {records[keeper].id, records[i].id, sim});
        }
    }
    return result;
}

}  // namespace wenyan
