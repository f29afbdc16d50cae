// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elbokit/rng.hpp"

namespace elbokit {

/// Factorized Gaussian N(mean, diag(variance)) over R^d.
///
/// Immutable once built. Construction throws DimensionError when the two
/// vectors differ in length or are empty, and DomainError when a variance
/// is not strictly positive and finite.
class DiagonalGaussian {
public:
    DiagonalGaussian(std::vector<double> mean, std::vector<double> variance);

    /// N(0, I) in `dim` dimensions.
    static DiagonalGaussian standard(std::size_t dim);

    std::size_t dim() const noexcept { return mean_.size(); }
    std::span<const double> mean() const noexcept { return mean_; }
    std::span<const double> variance() const noexcept { return variance_; }

    friend bool operator==(const DiagonalGaussian&, const DiagonalGaussian&) = default;

private:
    std::vector<double> mean_;
    std::vector<double> variance_;
};

/// A reparameterized draw z = mean + sqrt(variance) * epsilon with the
/// standard-normal noise kept alongside.
struct LatentSample {
    std::vector<double> z;
    std::vector<double> epsilon;
};

/// Sum over dimensions of the univariate normal log-densities.
double log_pdf(const DiagonalGaussian& g, std::span<const double> x);

/// -log(p). Throws DomainError unless 0 < p <= 1.
double information_content(double probability);

/// Deterministic map from a given noise vector to a latent draw.
LatentSample reparameterize(const DiagonalGaussian& g, std::span<const double> epsilon);

/// Draws epsilon ~ N(0, I) from `rng` and reparameterizes.
LatentSample sample_reparameterized(const DiagonalGaussian& g, RngState& rng);

}  // namespace elbokit
