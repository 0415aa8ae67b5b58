// SPDX-License-Identifier: Apache-2.0

#include "wenyan/cli/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "wenyan/common/errors.hpp"

namespace wenyan {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

uint64_t parse_uint(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a non-negative integer, got '" +
                          v + "'");
    }
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    using Setter = std::function<void(RunConfig&, const std::string&,
                                      const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"paths.input", [](RunConfig& c, const std::string&,
                           const std::string& v) { c.input = v; }},
        {"paths.workdir", [](RunConfig& c, const std::string&,
                             const std::string& v) { c.workdir = v; }},
        {"paths.trad_table", [](RunConfig& c, const std::string&,
                                const std::string& v) { c.trad_table = v; }},
        {"paths.punct_table",
         [](RunConfig& c, const std::string&, const std::string& v) {
             c.punct_table = v;
         }},
        {"paths.lexicon", [](RunConfig& c, const std::string&,
                             const std::string& v) { c.lexicon = v; }},
        {"paths.translate_input",
         [](RunConfig& c, const std::string&, const std::string& v) {
             c.translate_input = v;
         }},
        {"clean.punct_hook",
         [](RunConfig& c, const std::string&, const std::string& v) {
             c.punct_hook = v;
         }},
        {"clean.format",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "auto" && v != "jsonl" && v != "text") {
                 throw ConfigError(k + ": expected auto|jsonl|text");
             }
             c.clean_format = v;
         }},
        {"seed", [](RunConfig& c, const std::string& k,
                    const std::string& v) { c.seed = parse_uint(v, k); }},
        {"threads",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.threads = static_cast<size_t>(parse_uint(v, k));
         }},
        {"dedup.threshold",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.dedup.threshold = parse_double(v, k);
         }},
        {"dedup.num_perm",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.dedup.num_perm = static_cast<uint32_t>(parse_uint(v, k));
         }},
        {"dedup.shingle_size",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.dedup.shingle_size = static_cast<uint32_t>(parse_uint(v, k));
         }},
        {"dedup.field",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "source") {
                 c.dedup.field = DedupField::Source;
             } else if (v == "target") {
                 c.dedup.field = DedupField::Target;
             } else if (v == "both") {
                 c.dedup.field = DedupField::Both;
             } else {
                 throw ConfigError(k + ": expected source|target|both");
             }
         }},
        {"dedup.use_lsh",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.dedup.use_lsh = parse_bool(v, k);
         }},
        {"dedup.lsh_bands",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.dedup.lsh_bands = static_cast<uint32_t>(parse_uint(v, k));
         }},
        {"noise.p_da",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.noise.p_da = parse_double(v, k);
         }},
        {"noise.enc_mask_lo",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.noise.enc_mask_range.first = parse_double(v, k);
         }},
        {"noise.enc_mask_hi",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.noise.enc_mask_range.second = parse_double(v, k);
         }},
        {"noise.dec_mask_lo",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.noise.dec_mask_range.first = parse_double(v, k);
         }},
        {"noise.dec_mask_hi",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.noise.dec_mask_range.second = parse_double(v, k);
         }},
        {"loss.lambda",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.weights.lambda = parse_double(v, k);
         }},
        {"loss.mu",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.weights.mu = parse_double(v, k);
         }},
        {"optim.lr",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.adamw.lr = parse_double(v, k);
         }},
        {"optim.beta1",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.adamw.beta1 = parse_double(v, k);
         }},
        {"optim.beta2",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.adamw.beta2 = parse_double(v, k);
         }},
        {"optim.eps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.adamw.eps = parse_double(v, k);
         }},
        {"optim.weight_decay",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.adamw.weight_decay = parse_double(v, k);
         }},
        {"train.multitask_epochs",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.schedule.multitask_epochs =
                 static_cast<size_t>(parse_uint(v, k));
         }},
        {"train.translation_epoch",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.schedule.translation_epoch = parse_bool(v, k);
         }},
        {"train.batch_size",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.schedule.batch_size = static_cast<size_t>(parse_uint(v, k));
         }},
        {"train.exclude_benchmark",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.exclude_benchmark = parse_bool(v, k);
         }},
        {"model.d_model",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.model.d_model = static_cast<size_t>(parse_uint(v, k));
         }},
        {"model.n_layers",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.model.n_layers = static_cast<size_t>(parse_uint(v, k));
         }},
        {"model.n_heads",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.model.n_heads = static_cast<size_t>(parse_uint(v, k));
         }},
        {"model.ffn_dim",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.model.ffn_dim = static_cast<size_t>(parse_uint(v, k));
         }},
        {"model.max_len",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.model.max_len = static_cast<size_t>(parse_uint(v, k));
         }},
        {"decode.mode",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "greedy") {
                 c.decode.mode = DecodeConfig::Mode::Greedy;
             } else if (v == "beam") {
                 c.decode.mode = DecodeConfig::Mode::Beam;
             } else {
                 throw ConfigError(k + ": expected greedy|beam");
             }
         }},
        {"decode.beam_size",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.decode.beam_size = static_cast<size_t>(parse_uint(v, k));
         }},
        {"decode.max_decode_len",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.decode.max_decode_len = static_cast<size_t>(parse_uint(v, k));
         }},
    };

    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
        it->second(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

void RunConfig::validate() const {
    noise.validate();
    weights.validate();
    decode.validate();
    if (dedup.threshold <= 0.0 || dedup.threshold > 1.0) {
        throw ConfigError("dedup.threshold must be in (0, 1]");
    }
    if (dedup.num_perm == 0 || dedup.shingle_size == 0) {
        throw ConfigError("dedup.num_perm and dedup.shingle_size must be "
                          "positive");
    }
    if (schedule.batch_size == 0) {
        throw ConfigError("train.batch_size must be positive");
    }
    // model dims are validated when the model is instantiated; vocab_size
    // is not known until the tokenizer exists.
    if (model.d_model == 0 || model.n_heads == 0 ||
        model.d_model % model.n_heads != 0) {
        throw ConfigError("model.d_model must be divisible by model.n_heads");
    }
}

std::map<std::string, std::string> RunConfig::resolved() const {
    auto fmt = [](double v) {
        std::ostringstream s;
        s << v;
        return s.str();
    };
    std::map<std::string, std::string> out;
    out["paths.input"] = input;
    out["paths.workdir"] = workdir;
    out["paths.trad_table"] = trad_table;
    out["paths.punct_table"] = punct_table;
    out["paths.lexicon"] = lexicon;
    out["paths.translate_input"] = translate_input;
    out["clean.punct_hook"] = punct_hook;
    out["clean.format"] = clean_format;
    out["seed"] = std::to_string(seed);
    out["threads"] = std::to_string(threads);
    out["dedup.threshold"] = fmt(dedup.threshold);
    out["dedup.num_perm"] = std::to_string(dedup.num_perm);
    out["dedup.shingle_size"] = std::to_string(dedup.shingle_size);
    out["dedup.field"] = dedup.field == DedupField::Source   ? "source"
                         : dedup.field == DedupField::Target ? "target"
                                                             : "both";
    out["dedup.use_lsh"] = dedup.use_lsh ? "true" : "false";
    out["dedup.lsh_bands"] = std::to_string(dedup.lsh_bands);
    out["noise.p_da"] = fmt(noise.p_da);
    out["noise.enc_mask_lo"] = fmt(noise.enc_mask_range.first);
    out["noise.enc_mask_hi"] = fmt(noise.enc_mask_range.second);
    out["noise.dec_mask_lo"] = fmt(noise.dec_mask_range.first);
    out["noise.dec_mask_hi"] = fmt(noise.dec_mask_range.second);
    out["loss.lambda"] = fmt(weights.lambda);
    out["loss.mu"] = fmt(weights.mu);
    out["optim.lr"] = fmt(adamw.lr);
    out["optim.beta1"] = fmt(adamw.beta1);
    out["optim.beta2"] = fmt(adamw.beta2);
    out["optim.eps"] = fmt(adamw.eps);
    out["optim.weight_decay"] = fmt(adamw.weight_decay);
    out["train.multitask_epochs"] = std::to_string(schedule.multitask_epochs);
    out["train.translation_epoch"] =
        schedule.translation_epoch ? "true" : "false";
    out["train.batch_size"] = std::to_string(schedule.batch_size);
    out["train.exclude_benchmark"] = exclude_benchmark ? "true" : "false";
    out["model.d_model"] = std::to_string(model.d_model);
    out["model.n_layers"] = std::to_string(model.n_layers);
    out["model.n_heads"] = std::to_string(model.n_heads);
    out["model.ffn_dim"] = std::to_string(model.ffn_dim);
    out["model.max_len"] = std::to_string(model.max_len);
    out["decode.mode"] =
        decode.mode == DecodeConfig::Mode::Greedy ? "greedy" : "beam";
    out["decode.beam_size"] = std::to_string(decode.beam_size);
    out["decode.max_decode_len"] = std::to_string(decode.max_decode_len);
    return out;
}

}  // namespace wenyan
