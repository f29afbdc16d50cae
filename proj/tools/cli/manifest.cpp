// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "manifest.hpp"

#include <chrono>
#include <ctime>

namespace elbokit::cli {

std::string RunManifest::comment_header() const {
    std::string s;
    s += "# elbo-kit version=" + version + "\n";
    s += "# subcommand=" + subcommand + "\n";
    s += "# seed=" + std::to_string(seed) + "\n";
    s += "# config=" + config.dump() + "\n";
    s += "# started_at=" + started_at + "\n";
    s += "# finished_at=" + finished_at + "\n";
    return s;
}

nlohmann::json RunManifest::to_json() const {
    return {{"subcommand", subcommand}, {"config", config},         {"seed", seed},
            {"version", version},       {"started_at", started_at}, {"finished_at", finished_at}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace elbokit::cli
