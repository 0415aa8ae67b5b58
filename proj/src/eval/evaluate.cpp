// SPDX-License-Identifier: Apache-2.0

#include "wenyan/eval/evaluate.hpp"

#include <cstdio>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "wenyan/common/errors.hpp"

namespace wenyan {

namespace {

std::vector<TokenSeq> decode_all(const ModelParams& params,
                                 const Tokenizer& tok,
                                 const std::vector<CorpusRecord>& records,
                                 const DecodeConfig& dcfg, size_t threads) {
    std::vector<TokenSeq> outputs(records.size());
    auto worker = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            outputs[i] = decode(params, tok.encode(records[i].source), dcfg);
        }
    };
    if (threads <= 1 || records.size() < 2) {
        worker(0, records.size());
    } else {
        const size_t n_threads = std::min(threads, records.size());
        std::vector<std::thread> pool;
        const size_t chunk = (records.size() + n_threads - 1) / n_threads;
        for (size_t t = 0; t < n_threads; ++t) {
            const size_t begin = t * chunk;
            const size_t end = std::min(records.size(), begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return outputs;
}

}  // namespace

EvalReport evaluate_zero_shot(const ModelParams& params, const Tokenizer& tok,
                              const std::vector<BenchmarkSplit>& splits,
                              const DecodeConfig& dcfg, size_t threads) {
    EvalReport report;
    double bleu_sum = 0.0;
    for (const BenchmarkSplit& split : splits) {
        std::vector<TokenSeq> candidates =
            decode_all(params, tok, split.test, dcfg, threads);
        std::vector<TokenSeq> references;
        references.reserve(split.test.size());
        for (const CorpusRecord& rec : split.test) {
            if (!rec.target) {
                throw ConfigError("test record without reference: " + rec.id);
            }
            references.push_back(tok.encode(*rec.target));
        }
        EvalSetReport set_report;
        set_report.name = split.name;
        set_report.sentences = split.test.size();
        set_report.bleu = bleu(candidates, references);
        bleu_sum += set_report.bleu.corpus_bleu;
        report.sets.push_back(std::move(set_report));
    }
    if (!report.sets.empty()) {
        report.average_bleu = bleu_sum / static_cast<double>(report.sets.size());
    }
    return report;
}

std::string eval_report_to_json(const EvalReport& report) {
    nlohmann::json j;
    for (const EvalSetReport& set : report.sets) {
        nlohmann::json s;
        s["bleu"] = set.bleu.corpus_bleu;
        s["precisions"] = set.bleu.ngram_precisions;
        s["bp"] = set.bleu.brevity_penalty;
        s["candidate_len"] = set.bleu.candidate_len;
        s["reference_len"] = set.bleu.reference_len;
        s["sentences"] = set.sentences;
        if (set.bleu.bertscore) {
            s["bertscore"] = *set.bleu.bertscore;
        } else {
            s["bertscore"] = nullptr;
        }
        j["sets"][set.name] = s;
    }
    j["average_bleu"] = report.average_bleu;
    return j.dump(2);
}

std::string eval_report_table(const EvalReport& report) {
    std::ostringstream out;
    char buf[64];
    out << "Set                        BLEU\n";
    out << "-------------------------------\n";
    for (const EvalSetReport& set : report.sets) {
        std::snprintf(buf, sizeof(buf), "%-24s %6.2f\n", set.name.c_str(),
                      set.bleu.corpus_bleu);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%-24s %6.2f\n", "Average",
                  report.average_bleu);
    out << buf;
    return out.str();
}

}  // namespace wenyan
