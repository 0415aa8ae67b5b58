// SPDX-License-Identifier: Apache-2.0
//
// wenyanmt: ancient-Chinese translation toolkit front-end.
// Subcommands cover the whole pipeline: clean -> dedup -> align-stats ->
// benchmark -> train -> translate -> evaluate -> ablate.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wenyan/cli/commands.hpp"
#include "wenyan/common/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"wenyanmt - ancient Chinese translation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<uint64_t> seed_override;
    std::optional<size_t> threads_override;
    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--threads", threads_override,
                   "worker threads for parallel stages");

    auto* clean = app.add_subcommand("clean", "clean and normalize a corpus");
    std::string clean_input;
    clean->add_option("input", clean_input,
                      "raw corpus file (.jsonl or plain text)");
    auto* dedup =
        app.add_subcommand("dedup", "remove near-duplicate records");
    auto* align_stats = app.add_subcommand(
        "align-stats", "disyllabic alignment coverage statistics");
    auto* benchmark =
        app.add_subcommand("benchmark", "build per-origin 8:1:1 splits");
    auto* train = app.add_subcommand("train", "multitask training");
    auto* translate = app.add_subcommand(
        "translate", "translate one sentence per line (stdin by default)");
    std::string translate_input;
    translate->add_option("input", translate_input,
                          "file of sentences to translate");
    auto* evaluate =
        app.add_subcommand("evaluate", "zero-shot BLEU on the benchmark");
    auto* ablate =
        app.add_subcommand("ablate", "train and score the ablation matrix");

    CLI11_PARSE(app, argc, argv);

    try {
        wenyan::RunConfig cfg = config_path.empty()
                                    ? wenyan::RunConfig{}
                                    : wenyan::RunConfig::load(config_path);
        if (seed_override) cfg.seed = *seed_override;
        if (threads_override) cfg.threads = *threads_override;
        if (!clean_input.empty()) cfg.input = clean_input;
        if (!translate_input.empty()) cfg.translate_input = translate_input;

        wenyan::CommandResult result;
        if (clean->parsed()) {
            result = wenyan::cmd_clean(cfg);
        } else if (dedup->parsed()) {
            result = wenyan::cmd_dedup(cfg);
        } else if (align_stats->parsed()) {
            result = wenyan::cmd_align_stats(cfg);
        } else if (benchmark->parsed()) {
            result = wenyan::cmd_benchmark(cfg);
        } else if (train->parsed()) {
            result = wenyan::cmd_train(cfg);
        } else if (translate->parsed()) {
            result = wenyan::cmd_translate(cfg, std::cin, std::cout);
        } else if (evaluate->parsed()) {
            result = wenyan::cmd_evaluate(cfg);
        } else if (ablate->parsed()) {
            result = wenyan::cmd_ablate(cfg);
        }
        std::cerr << result.summary << "\n";
        return result.exit_code;
    } catch (const wenyan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
