// SPDX-License-Identifier: Apache-2.0

#include "wenyan/eval/bleu.hpp"

#include <cmath>
#include <map>

#include "wenyan/common/errors.hpp"

namespace wenyan {

namespace {

using NgramCounts = std::map<std::vector<int32_t>, size_t>;

NgramCounts count_ngrams(const TokenSeq& seq, int n) {
    NgramCounts counts;
    if (static_cast<int>(seq.size()) < n) return counts;
    for (size_t i = 0; i + n <= seq.size(); ++i) {
        counts[std::vector<int32_t>(seq.begin() + static_cast<ptrdiff_t>(i),
                                    seq.begin() +
                                        static_cast<ptrdiff_t>(i + n))] += 1;
    }
    return counts;
}

// clipped matches and candidate n-gram total for one pair
void accumulate(const TokenSeq& cand, const TokenSeq& ref, int n,
                size_t& matches, size_t& total) {
    const NgramCounts cand_counts = count_ngrams(cand, n);
    const NgramCounts ref_counts = count_ngrams(ref, n);
    for (const auto& [gram, count] : cand_counts) {
        total += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
            matches += std::min(count, it->second);
        }
    }
}

}  // namespace

BleuReport bleu(const std::vector<TokenSeq>& candidates,
                const std::vector<TokenSeq>& references, int max_n) {
    if (candidates.size() != references.size()) {
        throw LengthMismatch("need one reference per candidate");
    }
    if (candidates.empty()) throw EmptyInput("bleu over no sentences");
    if (max_n < 1) throw ConfigError("max_n must be at least 1");

    BleuReport report;
    report.ngram_precisions.assign(static_cast<size_t>(max_n), 0.0);
    for (size_t i = 0; i < candidates.size(); ++i) {
        report.candidate_len += candidates[i].size();
        report.reference_len += references[i].size();
    }

    double log_precision_sum = 0.0;
    bool any_zero = false;
    for (int n = 1; n <= max_n; ++n) {
        size_t matches = 0, total = 0;
        for (size_t i = 0; i < candidates.size(); ++i) {
            accumulate(candidates[i], references[i], n, matches, total);
        }
        const double p =
            total == 0 ? 0.0
                       : static_cast<double>(matches) /
                             static_cast<double>(total);
        report.ngram_precisions[static_cast<size_t>(n - 1)] = p;
        if (p <= 0.0) {
            any_zero = true;
        } else {
            log_precision_sum += std::log(p);
        }
    }

    if (report.candidate_len > 0 &&
        report.candidate_len < report.reference_len) {
        report.brevity_penalty =
            std::exp(1.0 - static_cast<double>(report.reference_len) /
                               static_cast<double>(report.candidate_len));
    }
    report.corpus_bleu =
        any_zero ? 0.0
                 : report.brevity_penalty *
                       std::exp(log_precision_sum / max_n) * 100.0;
    return report;
}

double sentence_bleu(const TokenSeq& candidate, const TokenSeq& reference,
                     int max_n) {
    double log_sum = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        size_t matches = 0, total = 0;
        accumulate(candidate, reference, n, matches, total);
        double p;
        if (n == 1) {
            p = total == 0 ? 0.0
                           : static_cast<double>(matches) /
                                 static_cast<double>(total);
        } else {
            p = static_cast<double>(matches + 1) /
                static_cast<double>(total + 1);
        }
        if (p <= 0.0) return 0.0;
        log_sum += std::log(p);
    }
    double bp = 1.0;
    if (!candidate.empty() && candidate.size() < reference.size()) {
        bp = std::exp(1.0 - static_cast<double>(reference.size()) /
                                static_cast<double>(candidate.size()));
    } else if (candidate.empty()) {
        return 0.0;
    }
    return bp * std::exp(log_sum / max_n) * 100.0;
}

}  // namespace wenyan
