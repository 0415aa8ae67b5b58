// SPDX-License-Identifier: Apache-2.0

#include "wenyan/cli/manifest.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wenyan/common/errors.hpp"
#include "wenyan/common/hashing.hpp"

namespace wenyan {

const char* kToolkitVersion = "0.1.0";

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for checksum: " + path);
    uint64_t h = kFnvOffset;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        h = fnv1a(buf, static_cast<size_t>(in.gcount()), h);
        if (!in) break;
    }
    return to_hex(h);
}

void write_manifest(const StageManifest& manifest,
                    const std::string& workdir) {
    std::filesystem::create_directories(workdir);
    nlohmann::json j;
    j["stage"] = manifest.stage;
    j["toolkit_version"] = kToolkitVersion;
    j["seed"] = manifest.seed;
    j["threads"] = manifest.threads;
    j["inputs"] = manifest.inputs;
    j["outputs"] = manifest.outputs;
    j["config"] = manifest.config;

    const std::string path = workdir + "/" + manifest.stage + ".manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write manifest: " + path);
    out << j.dump(2) << "\n";

    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    std::ofstream stamp(workdir + "/" + manifest.stage + ".stamp",
                        std::ios::binary | std::ios::trunc);
    stamp << secs << "\n";
}

void require_artifact(const std::string& path, const std::string& what) {
    if (!std::filesystem::exists(path)) {
        throw MissingArtifact(what + " (" + path + ")");
    }
}

}  // namespace wenyan
