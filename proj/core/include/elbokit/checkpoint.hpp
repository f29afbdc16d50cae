// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "elbokit/vae.hpp"

namespace elbokit {

struct Checkpoint {
    VaeModel model;
    TrainConfig config;
};

/// JSON document:
///   { "format": "elbo-kit-checkpoint", "version": 1, "config": {...},
///     "latent_dim": J, "data_dim": D,
///     "encoder": {"layers": [{"in", "out", "activation", "weight", "bias"}, ...]},
///     "decoder": {...} }
/// Weights are row-major (out x in). Doubles are written in shortest
/// round-trip form, so parsing restores every parameter bit for bit.
std::string checkpoint_to_json(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace elbokit
