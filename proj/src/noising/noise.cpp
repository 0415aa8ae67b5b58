// SPDX-License-Identifier: Apache-2.0

#include "wenyan/noising/noise.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "wenyan/common/errors.hpp"

namespace wenyan {

void NoiseConfig::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(p_da)) throw ConfigError("p_da must be in [0, 1]");
    for (const auto& range : {enc_mask_range, dec_mask_range}) {
        if (!in_unit(range.first) || !in_unit(range.second) ||
            range.first > range.second) {
            throw ConfigError("mask range must satisfy 0 <= lo <= hi <= 1");
        }
    }
    const double total =
        corrupt_probs[0] + corrupt_probs[1] + corrupt_probs[2];
    if (std::abs(total - 1.0) > 1e-9) {
        throw ConfigError("corrupt probabilities must sum to 1");
    }
}

DasExample make_das(std::u32string_view x, std::u32string_view y,
                    const AlignmentSet& alignment, const Tokenizer& tok,
                    const NoiseConfig& cfg, Rng& rng) {
    DasExample ex;
    for (const AlignPair& p : alignment.pairs) {
        if (rng.bernoulli(cfg.p_da)) ex.substituted.push_back(p.src_index);
    }
    size_t next_sub = 0;
    auto word_for = [&](size_t src_index) -> std::u32string_view {
        for (const AlignPair& p : alignment.pairs) {
            if (p.src_index == src_index) return y.substr(p.tgt_start, 2);
        }
        return {};
    };
    ex.noised_src.reserve(x.size() + ex.substituted.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (next_sub < ex.substituted.size() && ex.substituted[next_sub] == i) {
            const std::u32string_view word = word_for(i);
            ex.noised_src.push_back(tok.encode_char(word[0]));
            ex.noised_src.push_back(tok.encode_char(word[1]));
            ++next_sub;
        } else {
            ex.noised_src.push_back(tok.encode_char(x[i]));
        }
    }
    ex.tgt.reserve(y.size() + 2);
    ex.tgt.push_back(Tokenizer::kBos);
    for (char32_t c : y) ex.tgt.push_back(tok.encode_char(c));
    ex.tgt.push_back(Tokenizer::kEos);
    return ex;
}

namespace {

// One side of the dual masker. Selection count is the drawn ratio times the
// maskable-position count, rounded to nearest; the acceptance statistics
// (mean fractions at the range midpoints) rely on unbiased rounding, and
// ceiling would skew them upward.
void mask_side(const std::vector<TokenId>& tokens,
               const std::pair<double, double>& range,
               const std::array<double, 3>& corrupt_probs,
               const Tokenizer& tok, Rng& rng,
               std::vector<TokenId>& masked, std::vector<size_t>& positions,
               std::vector<TokenId>& originals) {
    masked = tokens;
    std::vector<size_t> maskable;
    maskable.reserve(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (!Tokenizer::is_special(tokens[i])) maskable.push_back(i);
    }
    if (maskable.empty()) {
        throw SequenceTooShort("no maskable position on one side");
    }
    const double ratio = rng.uniform(range.first, range.second);
    size_t count = static_cast<size_t>(
        std::llround(ratio * static_cast<double>(maskable.size())));
    count = std::min(count, maskable.size());

    std::vector<size_t> picked =
        rng.sample_without_replacement(maskable.size(), count);
    positions.clear();
    positions.reserve(count);
    for (size_t k : picked) positions.push_back(maskable[k]);
    std::sort(positions.begin(), positions.end());

    originals.clear();
    originals.reserve(count);
    const size_t content_vocab = tok.size() - Tokenizer::kNumSpecials;
    for (size_t pos : positions) {
        originals.push_back(tokens[pos]);
        const double u = rng.uniform();
        if (u < corrupt_probs[0]) {
            masked[pos] = Tokenizer::kMask;
        } else if (u < corrupt_probs[0] + corrupt_probs[1]) {
            masked[pos] = static_cast<TokenId>(Tokenizer::kNumSpecials +
                                               rng.below(content_vocab));
        }
        // else: kept unchanged, still recorded as masked
    }
}

}  // namespace

DmlmExample make_dmlm(const std::vector<TokenId>& x,
                      const std::vector<TokenId>& y, const Tokenizer& tok,
                      const NoiseConfig& cfg, Rng& rng) {
    if (x.empty() || y.empty()) {
        throw SequenceTooShort("dual masking needs non-empty sequences");
    }
    DmlmExample ex;
    mask_side(x, cfg.enc_mask_range, cfg.corrupt_probs, tok, rng,
              ex.masked_src, ex.src_mask_positions, ex.src_originals);
    mask_side(y, cfg.dec_mask_range, cfg.corrupt_probs, tok, rng,
              ex.masked_tgt, ex.tgt_mask_positions, ex.tgt_originals);
    return ex;
}

std::string das_to_json(const DasExample& ex) {
    nlohmann::json j;
    j["noised_src"] = ex.noised_src;
    j["tgt"] = ex.tgt;
    j["substituted"] = ex.substituted;
    return j.dump();
}

std::string dmlm_to_json(const DmlmExample& ex) {
    nlohmann::json j;
    j["masked_src"] = ex.masked_src;
    j["src_mask_positions"] = ex.src_mask_positions;
    j["src_originals"] = ex.src_originals;
    j["masked_tgt"] = ex.masked_tgt;
    j["tgt_mask_positions"] = ex.tgt_mask_positions;
    j["tgt_originals"] = ex.tgt_originals;
    return j.dump();
}

}  // namespace wenyan
