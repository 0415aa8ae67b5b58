// SPDX-License-Identifier: Apache-2.0
//
// Pipeline stages behind the CLI subcommands. Each stage reads its upstream
// artifacts from the work directory, writes its declared outputs plus a
// manifest, and reports record-level problems in the summary instead of
// aborting.

#pragma once

#include <iosfwd>
#include <string>

#include "wenyan/cli/config.hpp"

namespace wenyan {

struct CommandResult {
    int exit_code = 0;
    std::string summary;
};

// Artifact names inside the work directory.
namespace artifact {
inline constexpr const char* kCleaned = "cleaned.jsonl";
inline constexpr const char* kDeduped = "deduped.jsonl";
inline constexpr const char* kDropped = "dropped.jsonl";
inline constexpr const char* kAlignStats = "align_stats.json";
inline constexpr const char* kAlignments = "alignments.jsonl";
inline constexpr const char* kBenchmarkSummary = "benchmark.json";
inline constexpr const char* kCheckpoint = "checkpoint.bin";
inline constexpr const char* kTokenizer = "tokenizer.tsv";
inline constexpr const char* kLossLog = "loss_log.csv";
inline constexpr const char* kEvalJson = "eval_report.json";
inline constexpr const char* kEvalText = "eval_report.txt";
inline constexpr const char* kAblationJson = "ablation.json";
inline constexpr const char* kAblationText = "ablation.txt";
}  // namespace artifact

CommandResult cmd_clean(const RunConfig& cfg);
CommandResult cmd_dedup(const RunConfig& cfg);
CommandResult cmd_align_stats(const RunConfig& cfg);
CommandResult cmd_benchmark(const RunConfig& cfg);
CommandResult cmd_train(const RunConfig& cfg);
CommandResult cmd_translate(const RunConfig& cfg, std::istream& in,
                            std::ostream& out);
CommandResult cmd_evaluate(const RunConfig& cfg);
CommandResult cmd_ablate(const RunConfig& cfg);

}  // namespace wenyan
