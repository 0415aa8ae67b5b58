// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: a line-oriented "key = value" UTF-8 file with #
// comments and dotted section keys. Unknown keys are rejected and every
// numeric field is validated against its owning type at load time, so a
// manifest-embedded config is always replayable.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wenyan/corpus/dedup.hpp"
#include "wenyan/model/decode.hpp"
#include "wenyan/model/train.hpp"

namespace wenyan {

struct RunConfig {
    // paths
    std::string input;  // raw corpus consumed by `clean`
    std::string workdir = "out";
    std::string trad_table = "data/trad2simp.tsv";
    std::string punct_table = "data/punct_map.tsv";
    std::string lexicon = "data/lexicon.txt";
    std::string translate_input;  // empty: read standard input
    std::string punct_hook;      // shell command, disabled when empty
    std::string clean_format = "auto";  // auto | jsonl | text

    uint64_t seed = 0;
    size_t threads = 1;

    DedupOptions dedup;
    NoiseConfig noise;
    LossWeights weights;
    AdamWConfig adamw;
    TrainSchedule schedule;
    ModelHParams model;  // vocab_size resolved when the tokenizer is built
    DecodeConfig decode;
    bool exclude_benchmark = true;

    static RunConfig load(const std::string& path);
    static RunConfig from_string(const std::string& text);

    // Every key with its effective value, for embedding into manifests.
    std::map<std::string, std::string> resolved() const;

    void validate() const;
};

}  // namespace wenyan
