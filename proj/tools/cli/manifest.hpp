// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace elbokit::cli {

/// Describes one run well enough to repeat it: subcommand, resolved flags,
/// seed and toolkit version. Written at the head of every metrics file as
/// `# key=value` comment lines; only started_at/finished_at vary between
/// identical runs.
struct RunManifest {
    std::string subcommand;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::string version;
    std::string started_at;
    std::string finished_at;

    std::string comment_header() const;
    nlohmann::json to_json() const;
};

/// UTC wall clock as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace elbokit::cli
