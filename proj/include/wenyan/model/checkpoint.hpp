// SPDX-License-Identifier: Apache-2.0
//
// Checkpoint format: a binary file (magic, version, hyperparameters, then
// named blocks as little-endian 64-bit floats) plus a text manifest listing
// block names, shapes, and checksums.

#pragma once

#include <string>

#include "wenyan/model/transformer.hpp"

namespace wenyan {

// Writes <path> and <path>.manifest.
void save_checkpoint(const ModelParams& params, const std::string& path);

// Validates magic/version and that the stored blocks match the layout
// implied by the stored hyperparameters.
ModelParams load_checkpoint(const std::string& path);

}  // namespace wenyan
