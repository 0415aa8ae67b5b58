// SPDX-License-Identifier: Apache-2.0

#include "wenyan/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wenyan/align/aligner.hpp"
#include "wenyan/cli/manifest.hpp"
#include "wenyan/common/errors.hpp"
#include "wenyan/common/unicode.hpp"
#include "wenyan/corpus/clean.hpp"
#include "wenyan/corpus/dedup.hpp"
#include "wenyan/corpus/record_io.hpp"
#include "wenyan/corpus/stats.hpp"
#include "wenyan/eval/ablation.hpp"
#include "wenyan/eval/benchmark.hpp"
#include "wenyan/eval/evaluate.hpp"
#include "wenyan/model/checkpoint.hpp"
#include "wenyan/model/train.hpp"

namespace wenyan {

namespace {

namespace fs = std::filesystem;

std::string joined(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// Toolkit-written artifacts must parse cleanly; a malformed line there is a
// pipeline bug, not a data problem.
std::vector<CorpusRecord> load_artifact(const std::string& path) {
    JsonlReadResult result = read_jsonl(path);
    if (!result.errors.empty()) {
        throw ParseError(path + ": line " +
                         std::to_string(result.errors[0].line_no) + ": " +
                         result.errors[0].message);
    }
    return result.records;
}

std::vector<CorpusRecord> parallel_only(std::vector<CorpusRecord> records) {
    std::vector<CorpusRecord> out;
    out.reserve(records.size());
    for (auto& rec : records) {
        if (rec.is_parallel() && !rec.source.empty() &&
            !rec.target->empty()) {
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<NamedSet> group_by_origin(
    const std::vector<CorpusRecord>& records) {
    std::map<std::string, std::vector<CorpusRecord>> groups;
    for (const auto& rec : records) {
        groups[rec.origin.empty() ? "default" : rec.origin].push_back(rec);
    }
    std::vector<NamedSet> sets;
    sets.reserve(groups.size());
    for (auto& [name, recs] : groups) {
        sets.push_back({name, std::move(recs)});
    }
    return sets;
}

std::vector<std::string> benchmark_set_names(const std::string& summary_path) {
    std::ifstream in(summary_path, std::ios::binary);
    if (!in) throw IoError("cannot open benchmark summary: " + summary_path);
    nlohmann::json j;
    in >> j;
    std::vector<std::string> names;
    for (const auto& set : j["sets"]) {
        names.push_back(set["name"].get<std::string>());
    }
    return names;
}

std::vector<BenchmarkSplit> load_benchmark(const std::string& workdir) {
    const std::string summary = joined(workdir, artifact::kBenchmarkSummary);
    require_artifact(summary, "benchmark summary");
    std::vector<BenchmarkSplit> splits;
    for (const std::string& name : benchmark_set_names(summary)) {
        BenchmarkSplit split;
        split.name = name;
        const std::string base = joined(workdir, "benchmark/" + name);
        require_artifact(base + ".train.jsonl", "benchmark train split");
        split.train = load_artifact(base + ".train.jsonl");
        split.valid = load_artifact(base + ".valid.jsonl");
        split.test = load_artifact(base + ".test.jsonl");
        splits.push_back(std::move(split));
    }
    return splits;
}

// Training corpus for train/ablate: parallel records from the dedup stage,
// minus every benchmark record when a benchmark exists and exclusion is on.
std::vector<CorpusRecord> load_training_corpus(const RunConfig& cfg,
                                               StageManifest& manifest) {
    const std::string deduped = joined(cfg.workdir, artifact::kDeduped);
    require_artifact(deduped, "deduplicated corpus");
    manifest.inputs[deduped] = file_checksum(deduped);
    std::vector<CorpusRecord> corpus = parallel_only(load_artifact(deduped));
    const std::string summary =
        joined(cfg.workdir, artifact::kBenchmarkSummary);
    if (cfg.exclude_benchmark && fs::exists(summary)) {
        corpus = exclude_benchmark_records(corpus, load_benchmark(cfg.workdir));
    }
    return corpus;
}

StageManifest base_manifest(const RunConfig& cfg, const std::string& stage) {
    StageManifest m;
    m.stage = stage;
    m.seed = cfg.seed;
    m.threads = cfg.threads;
    m.config = cfg.resolved();
    return m;
}

}  // namespace

CommandResult cmd_clean(const RunConfig& cfg) {
    require_artifact(cfg.input, "input corpus");
    require_artifact(cfg.trad_table, "traditional-to-simplified table");
    require_artifact(cfg.punct_table, "punctuation table");
    fs::create_directories(cfg.workdir);

    std::string input_path = cfg.input;
    if (!cfg.punct_hook.empty()) {
        // External punctuation-restoration hook: a shell command reading the
        // file on stdin and writing the punctuated version on stdout.
        const std::string hooked = joined(cfg.workdir, "punct_hooked.txt");
        const std::string command =
            cfg.punct_hook + " < '" + input_path + "' > '" + hooked + "'";
        if (std::system(command.c_str()) != 0) {
            throw IoError("punctuation hook failed: " + cfg.punct_hook);
        }
        input_path = hooked;
    }

    const CharMapTable trad = CharMapTable::load(cfg.trad_table, "trad2simp");
    const CharMapTable punct = CharMapTable::load(cfg.punct_table, "punct");

    bool is_jsonl = cfg.clean_format == "jsonl";
    if (cfg.clean_format == "auto") {
        is_jsonl = fs::path(input_path).extension() == ".jsonl";
    }
    std::vector<CorpusRecord> records;
    std::vector<LineError> errors;
    if (is_jsonl) {
        JsonlReadResult result = read_jsonl(input_path);
        records = std::move(result.records);
        errors = std::move(result.errors);
    } else {
        records = read_plain(input_path, fs::path(input_path).stem().string(),
                             fs::path(input_path).stem().string());
    }

    size_t chars_before = 0, chars_after = 0, audit_failures = 0;
    for (auto& rec : records) {
        chars_before += rec.source.size() +
                        (rec.target ? rec.target->size() : 0);
        rec.source = clean_text(rec.source, trad, punct);
        if (rec.target) *rec.target = clean_text(*rec.target, trad, punct);
        chars_after += rec.source.size() +
                       (rec.target ? rec.target->size() : 0);
        // postcondition audit: cleaning must be idempotent
        if (clean_text(rec.source, trad, punct) != rec.source) {
            ++audit_failures;
        }
    }
    const std::string out_path = joined(cfg.workdir, artifact::kCleaned);
    write_jsonl(records, out_path);

    StageManifest manifest = base_manifest(cfg, "clean");
    manifest.inputs[cfg.input] = file_checksum(cfg.input);
    manifest.inputs[cfg.trad_table] = file_checksum(cfg.trad_table);
    manifest.inputs[cfg.punct_table] = file_checksum(cfg.punct_table);
    manifest.outputs = {artifact::kCleaned};
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "clean: " << records.size() << " records, " << chars_before
            << " -> " << chars_after << " chars";
    if (!errors.empty()) {
        summary << "; " << errors.size() << " malformed line(s):";
        for (const LineError& e : errors) {
            summary << " line " << e.line_no;
        }
    }
    if (audit_failures > 0) {
        summary << "; " << audit_failures << " idempotence audit failure(s)";
    }
    return {errors.empty() && audit_failures == 0 ? 0 : 1, summary.str()};
}

CommandResult cmd_dedup(const RunConfig& cfg) {
    const std::string cleaned = joined(cfg.workdir, artifact::kCleaned);
    require_artifact(cleaned, "cleaned corpus");
    std::vector<CorpusRecord> records = load_artifact(cleaned);

    DedupOptions opts = cfg.dedup;
    opts.seed = cfg.seed;
    const DedupResult result = deduplicate(records, opts);

    write_jsonl(result.kept, joined(cfg.workdir, artifact::kDeduped));
    {
        std::ofstream out(joined(cfg.workdir, artifact::kDropped),
                          std::ios::binary | std::ios::trunc);
        for (const DuplicatePair& p : result.dropped) {
            nlohmann::json j;
            j["kept"] = p.kept;
            j["dropped"] = p.dropped;
            j["similarity"] = p.similarity;
            out << j.dump() << '\n';
        }
    }

    StageManifest manifest = base_manifest(cfg, "dedup");
    manifest.inputs[cleaned] = file_checksum(cleaned);
    manifest.outputs = {artifact::kDeduped, artifact::kDropped};
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "dedup: kept " << result.kept.size() << ", dropped "
            << result.dropped.size();
    return {0, summary.str()};
}

CommandResult cmd_align_stats(const RunConfig& cfg) {
    const std::string deduped = joined(cfg.workdir, artifact::kDeduped);
    require_artifact(deduped, "deduplicated corpus");
    require_artifact(cfg.lexicon, "lexicon");
    const std::vector<CorpusRecord> corpus =
        parallel_only(load_artifact(deduped));
    const Lexicon lex = Lexicon::load(cfg.lexicon);

    const CoverageReport report = alignment_coverage(corpus, lex);
    {
        nlohmann::json j;
        j["pct_pairs_with_alignment"] = report.pct_pairs_with_alignment;
        j["mean_src_char_aligned"] = report.mean_src_char_aligned;
        j["parallel_records"] = corpus.size();
        std::ofstream out(joined(cfg.workdir, artifact::kAlignStats),
                          std::ios::binary | std::ios::trunc);
        out << j.dump(2) << "\n";
    }
    {
        std::ofstream out(joined(cfg.workdir, artifact::kAlignments),
                          std::ios::binary | std::ios::trunc);
        for (const CorpusRecord& rec : corpus) {
            const AlignmentSet alignment = align_pair(
                rec.source, *rec.target, segment_target(*rec.target, lex));
            out << alignment_to_json(rec.id, alignment) << '\n';
        }
    }

    StageManifest manifest = base_manifest(cfg, "align_stats");
    manifest.inputs[deduped] = file_checksum(deduped);
    manifest.inputs[cfg.lexicon] = file_checksum(cfg.lexicon);
    manifest.outputs = {artifact::kAlignStats, artifact::kAlignments};
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "align-stats: " << corpus.size() << " pairs, "
            << report.pct_pairs_with_alignment * 100.0 << "% with alignment, "
            << report.mean_src_char_aligned * 100.0
            << "% source chars aligned";
    return {0, summary.str()};
}

CommandResult cmd_benchmark(const RunConfig& cfg) {
    const std::string deduped = joined(cfg.workdir, artifact::kDeduped);
    require_artifact(deduped, "deduplicated corpus");
    const std::vector<CorpusRecord> corpus =
        parallel_only(load_artifact(deduped));
    const std::vector<NamedSet> sets = group_by_origin(corpus);
    if (sets.empty()) throw EmptySet("no parallel records to split");
    const std::vector<BenchmarkSplit> splits = build_benchmark(sets, cfg.seed);

    fs::create_directories(joined(cfg.workdir, "benchmark"));
    nlohmann::json summary_json;
    summary_json["sets"] = nlohmann::json::array();
    std::vector<std::string> outputs{artifact::kBenchmarkSummary};
    for (const BenchmarkSplit& split : splits) {
        const std::string base = joined(cfg.workdir, "benchmark/" + split.name);
        write_jsonl(split.train, base + ".train.jsonl");
        write_jsonl(split.valid, base + ".valid.jsonl");
        write_jsonl(split.test, base + ".test.jsonl");
        nlohmann::json s;
        s["name"] = split.name;
        s["train"] = split.train.size();
        s["valid"] = split.valid.size();
        s["test"] = split.test.size();
        summary_json["sets"].push_back(s);
        for (const char* part : {".train.jsonl", ".valid.jsonl",
                                 ".test.jsonl"}) {
            outputs.push_back("benchmark/" + split.name + part);
        }
    }
    {
        std::ofstream out(joined(cfg.workdir, artifact::kBenchmarkSummary),
                          std::ios::binary | std::ios::trunc);
        out << summary_json.dump(2) << "\n";
    }

    StageManifest manifest = base_manifest(cfg, "benchmark");
    manifest.inputs[deduped] = file_checksum(deduped);
    manifest.outputs = outputs;
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "benchmark: " << splits.size() << " set(s)";
    for (const BenchmarkSplit& split : splits) {
        summary << " " << split.name << "=" << split.train.size() << "/"
                << split.valid.size() << "/" << split.test.size();
    }
    return {0, summary.str()};
}

CommandResult cmd_train(const RunConfig& cfg) {
    require_artifact(cfg.lexicon, "lexicon");
    StageManifest manifest = base_manifest(cfg, "train");
    const std::vector<CorpusRecord> corpus =
        load_training_corpus(cfg, manifest);
    if (corpus.empty()) throw EmptyCorpus("training corpus is empty");
    const Lexicon lex = Lexicon::load(cfg.lexicon);
    manifest.inputs[cfg.lexicon] = file_checksum(cfg.lexicon);

    const Tokenizer tok = Tokenizer::build(corpus);
    ModelHParams hp = cfg.model;
    hp.vocab_size = tok.size();
    ModelParams params = ModelParams::init(hp, cfg.seed);

    TrainOptions opts;
    opts.noise = cfg.noise;
    opts.noise.seed = cfg.seed;
    opts.weights = cfg.weights;
    opts.adamw = cfg.adamw;
    opts.schedule = cfg.schedule;
    opts.seed = cfg.seed;
    const TrainResult result = train(params, corpus, lex, tok, opts);

    save_checkpoint(params, joined(cfg.workdir, artifact::kCheckpoint));
    tok.save(joined(cfg.workdir, artifact::kTokenizer));
    write_loss_log_csv(result.log, joined(cfg.workdir, artifact::kLossLog));

    manifest.outputs = {artifact::kCheckpoint, artifact::kTokenizer,
                        artifact::kLossLog};
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "train: " << corpus.size() << " pairs, "
            << result.log.size() << " steps, final loss "
            << (result.log.empty() ? 0.0 : result.log.back().l_total)
            << ", params " << params.param_count();
    return {0, summary.str()};
}

CommandResult cmd_translate(const RunConfig& cfg, std::istream& in,
                            std::ostream& out) {
    const std::string ckpt = joined(cfg.workdir, artifact::kCheckpoint);
    const std::string tok_path = joined(cfg.workdir, artifact::kTokenizer);
    require_artifact(ckpt, "checkpoint");
    require_artifact(tok_path, "tokenizer");
    const ModelParams params = load_checkpoint(ckpt);
    const Tokenizer tok = Tokenizer::load(tok_path);

    std::ifstream file_in;
    std::istream* source = &in;
    if (!cfg.translate_input.empty()) {
        require_artifact(cfg.translate_input, "translation input");
        file_in.open(cfg.translate_input, std::ios::binary);
        source = &file_in;
    }

    size_t lines = 0;
    std::string line;
    while (std::getline(*source, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<TokenId> src = tok.encode(utf8_decode(line));
        const std::vector<TokenId> hyp = decode(params, src, cfg.decode);
        out << utf8_encode(tok.decode(hyp)) << '\n';
        ++lines;
    }

    StageManifest manifest = base_manifest(cfg, "translate");
    manifest.inputs[ckpt] = file_checksum(ckpt);
    manifest.inputs[tok_path] = file_checksum(tok_path);
    manifest.outputs = {"<stdout>"};
    write_manifest(manifest, cfg.workdir);

    return {0, "translate: " + std::to_string(lines) + " line(s)"};
}

CommandResult cmd_evaluate(const RunConfig& cfg) {
    const std::string ckpt = joined(cfg.workdir, artifact::kCheckpoint);
    const std::string tok_path = joined(cfg.workdir, artifact::kTokenizer);
    require_artifact(ckpt, "checkpoint");
    require_artifact(tok_path, "tokenizer");
    const ModelParams params = load_checkpoint(ckpt);
    const Tokenizer tok = Tokenizer::load(tok_path);
    const std::vector<BenchmarkSplit> splits = load_benchmark(cfg.workdir);

    const EvalReport report =
        evaluate_zero_shot(params, tok, splits, cfg.decode, cfg.threads);
    {
        std::ofstream out(joined(cfg.workdir, artifact::kEvalJson),
                          std::ios::binary | std::ios::trunc);
        out << eval_report_to_json(report) << "\n";
    }
    {
        std::ofstream out(joined(cfg.workdir, artifact::kEvalText),
                          std::ios::binary | std::ios::trunc);
        out << eval_report_table(report);
    }

    StageManifest manifest = base_manifest(cfg, "evaluate");
    manifest.inputs[ckpt] = file_checksum(ckpt);
    manifest.inputs[tok_path] = file_checksum(tok_path);
    manifest.inputs[joined(cfg.workdir, artifact::kBenchmarkSummary)] =
        file_checksum(joined(cfg.workdir, artifact::kBenchmarkSummary));
    manifest.outputs = {artifact::kEvalJson, artifact::kEvalText};
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "evaluate: average BLEU " << report.average_bleu << " over "
            << report.sets.size() << " set(s)";
    return {0, summary.str()};
}

CommandResult cmd_ablate(const RunConfig& cfg) {
    require_artifact(cfg.lexicon, "lexicon");
    StageManifest manifest = base_manifest(cfg, "ablate");
    const std::vector<CorpusRecord> corpus =
        load_training_corpus(cfg, manifest);
    if (corpus.empty()) throw EmptyCorpus("training corpus is empty");
    const Lexicon lex = Lexicon::load(cfg.lexicon);
    manifest.inputs[cfg.lexicon] = file_checksum(cfg.lexicon);
    const std::vector<BenchmarkSplit> splits = load_benchmark(cfg.workdir);

    const Tokenizer tok = Tokenizer::build(corpus);
    ModelHParams hp = cfg.model;
    hp.vocab_size = tok.size();

    TrainOptions base_opts;
    base_opts.noise = cfg.noise;
    base_opts.noise.seed = cfg.seed;
    base_opts.weights = cfg.weights;
    base_opts.adamw = cfg.adamw;
    base_opts.schedule = cfg.schedule;
    base_opts.seed = cfg.seed;

    const AblationReport report =
        run_ablation_matrix(corpus, splits, lex, tok, hp, base_opts,
                            cfg.decode, standard_ablations());
    {
        std::ofstream out(joined(cfg.workdir, artifact::kAblationJson),
                          std::ios::binary | std::ios::trunc);
        out << ablation_report_to_json(report) << "\n";
    }
    {
        std::ofstream out(joined(cfg.workdir, artifact::kAblationText),
                          std::ios::binary | std::ios::trunc);
        out << ablation_table(report);
    }

    manifest.outputs = {artifact::kAblationJson, artifact::kAblationText};
    write_manifest(manifest, cfg.workdir);

    std::ostringstream summary;
    summary << "ablate: " << report.rows.size() << " configuration(s)";
    return {0, summary.str()};
}

}  // namespace wenyan
