// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/hashing.hpp"

namespace wenyan {

namespace {

constexpr char kMagic[8] = {'W', 'Y', 'M', 'T', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("truncated checkpoint");
    return v;
}

}  // namespace

void save_checkpoint(const ModelParams& params, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    out.write(kMagic, sizeof(kMagic));
    write_pod<uint32_t>(out, kVersion);
    const ModelHParams& hp = params.hp();
    for (size_t v : {hp.vocab_size, hp.d_model, hp.n_layers, hp.n_heads,
                     hp.ffn_dim, hp.max_len}) {
        write_pod<uint64_t>(out, v);
    }
    write_pod<uint32_t>(out, static_cast<uint32_t>(params.block_count()));
    for (size_t b = 0; b < params.block_count(); ++b) {
        const std::string& name = params.block_name(b);
        const Tensor& t = params.block(b);
        write_pod<uint32_t>(out, static_cast<uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        write_pod<uint32_t>(out, static_cast<uint32_t>(t.shape.size()));
        for (size_t d : t.shape) write_pod<uint64_t>(out, d);
        out.write(reinterpret_cast<const char*>(t.data.data()),
                  static_cast<std::streamsize>(t.data.size() *
                                               sizeof(double)));
    }
    if (!out) throw IoError("failed writing checkpoint: " + path);

    std::ofstream manifest(path + ".manifest",
                           std::ios::binary | std::ios::trunc);
    if (!manifest) throw IoError("cannot write manifest for: " + path);
    manifest << "format=wymt-checkpoint version=" << kVersion << "\n";
    manifest << "vocab_size=" << hp.vocab_size << " d_model=" << hp.d_model
             << " n_layers=" << hp.n_layers << " n_heads=" << hp.n_heads
             << " ffn_dim=" << hp.ffn_dim << " max_len=" << hp.max_len
             << "\n";
    manifest << "param_count=" << params.param_count() << "\n";
    for (size_t b = 0; b < params.block_count(); ++b) {
        const Tensor& t = params.block(b);
        manifest << params.block_name(b) << "\tshape=";
        for (size_t i = 0; i < t.shape.size(); ++i) {
            if (i) manifest << "x";
            manifest << t.shape[i];
        }
        manifest << "\tchecksum="
                 << to_hex(fnv1a(t.data.data(),
                                 t.data.size() * sizeof(double)))
                 << "\n";
    }
    manifest << "checksum=" << to_hex(params.checksum()) << "\n";
}

ModelParams load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ParseError("not a checkpoint file: " + path);
    }
    const auto version = read_pod<uint32_t>(in);
    if (version != kVersion) {
        throw ParseError("unsupported checkpoint version " +
                         std::to_string(version));
    }
    ModelHParams hp;
    hp.vocab_size = read_pod<uint64_t>(in);
    hp.d_model = read_pod<uint64_t>(in);
    hp.n_layers = read_pod<uint64_t>(in);
    hp.n_heads = read_pod<uint64_t>(in);
    hp.ffn_dim = read_pod<uint64_t>(in);
    hp.max_len = read_pod<uint64_t>(in);

    // Structural reference for the stored hyperparameters.
    ModelParams params = ModelParams::init(hp, 0);
    const auto n_blocks = read_pod<uint32_t>(in);
    if (n_blocks != params.block_count()) {
        throw ParseError("checkpoint block count mismatch");
    }
    for (size_t b = 0; b < n_blocks; ++b) {
        const auto name_len = read_pod<uint32_t>(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        const auto ndim = read_pod<uint32_t>(in);
        std::vector<size_t> shape(ndim);
        for (auto& d : shape) d = read_pod<uint64_t>(in);
        if (name != params.block_name(b) ||
            shape != params.block(b).shape) {
            throw ParseError("checkpoint block '" + name +
                             "' does not match the declared layout");
        }
        Tensor& t = params.block(b);
        in.read(reinterpret_cast<char*>(t.data.data()),
                static_cast<std::streamsize>(t.data.size() *
                                             sizeof(double)));
        if (!in) throw IoError("truncated checkpoint block: " + name);
    }
    return params;
}

}  // namespace wenyan
