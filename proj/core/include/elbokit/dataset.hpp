// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "elbokit/matrix.hpp"
#include "elbokit/rng.hpp"

namespace elbokit {

/// Rows of equal width with every entry in [0, 1].
struct Dataset {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t data_dim = 0;
    std::vector<std::vector<double>> rows;

    void validate() const;

    /// Stacks the selected rows into a batch matrix.
    Matrix gather(std::span<const std::size_t> indices) const;
    Matrix as_matrix() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// side x side binary images, each holding exactly one full horizontal or
/// vertical bar of ones. The bar is uniform over the 2 * side choices.
Dataset gen_bars(std::size_t n, std::size_t side, RngState& rng);

/// Equal-weight mixture of isotropic 2-D Gaussians (std-dev `spread`) around
/// `centers`, squashed into the unit square by u = clamp(0.5 + 0.05 p, 0, 1)
/// per coordinate. The affine part maps [-10, 10] onto [0, 1].
Dataset gen_gaussian_blobs(std::size_t n, std::span<const std::array<double, 2>> centers, double spread,
                           RngState& rng);

/// The squashing map used by gen_gaussian_blobs.
double squash_blob_coordinate(double p) noexcept;

/// Plain-text CSV: a header line `# <name>,<seed>,<data_dim>` followed by one
/// comma-separated row per datum. Values use the shortest decimal form that
/// round-trips, so load(save(d)) == d bit for bit. Writes go to a temporary
/// sibling file that is then renamed over `path`.
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

/// Throws FormatError carrying the 1-based line number on malformed input.
Dataset load_dataset(const std::filesystem::path& path);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

/// Writes `contents` to a temp file next to `path` and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace elbokit
