// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elbokit::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
};

/// Runs one elbo-kit invocation. `args` excludes the program name, e.g.
/// {"kl-check", "--mu-q", "1", "--var-q", "1"}. Data goes to `out`, human
/// readable summaries and diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Drops manifest timestamp lines so two runs of the same command can be
/// compared byte for byte.
std::string strip_timestamps(const std::string& metrics_text);

}  // namespace elbokit::cli
