// SPDX-License-Identifier: Apache-2.0
//
// Stage manifests: machine-readable record of what a stage read (with
// checksums), what it wrote, and the exact configuration, enabling exact
// reruns. The wall-clock timestamp lives in a separate .stamp file so
// rerunning a stage with unchanged inputs rewrites byte-identical outputs.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace wenyan {

extern const char* kToolkitVersion;

struct StageManifest {
    std::string stage;
    uint64_t seed = 0;
    size_t threads = 1;
    std::map<std::string, std::string> inputs;  // path -> fnv1a hex
    std::vector<std::string> outputs;
    std::map<std::string, std::string> config;
};

// FNV-1a of the file bytes, as 16 hex digits. Throws IoError.
std::string file_checksum(const std::string& path);

// Writes <workdir>/<stage>.manifest.json and <workdir>/<stage>.stamp.
void write_manifest(const StageManifest& manifest,
                    const std::string& workdir);

// Throws MissingArtifact naming the path when it does not exist.
void require_artifact(const std::string& path, const std::string& what);

}  // namespace wenyan
