// SPDX-License-Identifier: Apache-2.0

#include "wenyan/eval/ablation.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wenyan/common/errors.hpp"

namespace wenyan {

std::string ablation_label(bool use_das, bool use_dmlm, bool dynamic_mask,
                           bool translation_epoch) {
    std::string label;
    if (!use_das) label += label.empty() ? "wo_das" : "+wo_das";
    if (!use_dmlm) label += label.empty() ? "wo_dmlm" : "+wo_dmlm";
    if (!dynamic_mask) {
        label += label.empty() ? "wo_dynamic_mask" : "+wo_dynamic_mask";
    }
    if (!translation_epoch) {
        label += label.empty() ? "wo_translation" : "+wo_translation";
    }
    return label.empty() ? "full" : label;
}

std::vector<AblationConfig> standard_ablations() {
    std::vector<AblationConfig> configs;
    configs.push_back({true, true, true, true, ""});
    configs.push_back({false, true, true, true, ""});
    configs.push_back({true, false, true, true, ""});
    configs.push_back({true, true, false, true, ""});
    configs.push_back({true, true, true, false, ""});
    for (AblationConfig& c : configs) {
        c.label = ablation_label(c.use_das, c.use_dmlm, c.dynamic_mask,
                                 c.translation_epoch);
    }
    return configs;
}

AblationReport run_ablation_matrix(
    const std::vector<CorpusRecord>& train_corpus,
    const std::vector<BenchmarkSplit>& eval_splits, const Lexicon& lex,
    const Tokenizer& tok, const ModelHParams& hp,
    const TrainOptions& base_opts, const DecodeConfig& dcfg,
    const std::vector<AblationConfig>& configs) {
    if (configs.empty()) throw ConfigError("no ablation configurations");
    AblationReport report;
    for (const AblationConfig& cfg : configs) {
        TrainOptions opts = base_opts;
        opts.use_das = cfg.use_das;
        opts.use_dmlm = cfg.use_dmlm;
        opts.dynamic_mask = cfg.dynamic_mask;
        opts.schedule.translation_epoch = cfg.translation_epoch;

        ModelParams params = ModelParams::init(hp, opts.seed);
        train(params, train_corpus, lex, tok, opts);
        const EvalReport eval =
            evaluate_zero_shot(params, tok, eval_splits, dcfg);

        AblationRow row;
        row.label = cfg.label.empty()
                        ? ablation_label(cfg.use_das, cfg.use_dmlm,
                                         cfg.dynamic_mask,
                                         cfg.translation_epoch)
                        : cfg.label;
        for (const EvalSetReport& set : eval.sets) {
            row.set_bleu.emplace_back(set.name, set.bleu.corpus_bleu);
        }
        row.average = eval.average_bleu;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string ablation_table(const AblationReport& report) {
    std::ostringstream out;
    char buf[256];
    out << "Model";
    if (!report.rows.empty()) {
        for (const auto& [name, score] : report.rows[0].set_bleu) {
            std::snprintf(buf, sizeof(buf), "  %18s", name.c_str());
            out << buf;
        }
    }
    out << "    Avg.\n";
    for (const AblationRow& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%-20s", row.label.c_str());
        out << buf;
        for (const auto& [name, score] : row.set_bleu) {
            std::snprintf(buf, sizeof(buf), "  %18.2f", score);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "  %6.2f\n", row.average);
        out << buf;
    }
    return out.str();
}

std::string ablation_report_to_json(const AblationReport& report) {
    nlohmann::json j = nlohmann::json::array();
    for (const AblationRow& row : report.rows) {
        nlohmann::json r;
        r["label"] = row.label;
        for (const auto& [name, score] : row.set_bleu) {
            r["sets"][name] = score;
        }
        r["average"] = row.average;
        j.push_back(r);
    }
    return j.dump(2);
}

}  // namespace wenyan
