// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "elbokit/error.hpp"

namespace elbokit {

namespace {
const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);
}

DiagonalGaussian::DiagonalGaussian(std::vector<double> mean, std::vector<double> variance)
    : mean_(std::move(mean)), variance_(std::move(variance)) {
    if (mean_.empty()) {
        throw DimensionError("DiagonalGaussian: dimension must be at least 1");
    }
    detail::require_same_size(mean_.size(), variance_.size(), "DiagonalGaussian mean/variance");
    for (std::size_t i = 0; i < variance_.size(); ++i) {
        if (!(variance_[i] > 0.0) || !std::isfinite(variance_[i])) {
            throw DomainError("DiagonalGaussian: variance[" + std::to_string(i) +
                              "] must be positive and finite");
        }
        if (!std::isfinite(mean_[i])) {
            throw DomainError("DiagonalGaussian: mean[" + std::to_string(i) + "] is not finite");
        }
    }
}

DiagonalGaussian DiagonalGaussian::standard(std::size_t dim) {
    return DiagonalGaussian(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

double log_pdf(const DiagonalGaussian& g, std::span<const double> x) {
    detail::require_same_size(x.size(), g.dim(), "log_pdf");
    const auto mean = g.mean();
    const auto var = g.variance();
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - mean[i];
        total += -kHalfLogTwoPi - 0.5 * std::log(var[i]) - diff * diff / (2.0 * var[i]);
    }
    return total;
}

double information_content(double probability) {
    if (!(probability > 0.0) || probability > 1.0) {
        throw DomainError("information_content: probability must lie in (0, 1]");
    }
    return -std::log(probability);
}

LatentSample reparameterize(const DiagonalGaussian& g, std::span<const double> epsilon) {
    detail::require_same_size(epsilon.size(), g.dim(), "reparameterize");
    LatentSample out;
    out.epsilon.assign(epsilon.begin(), epsilon.end());
    out.z.resize(g.dim());
    const auto mean = g.mean();
    const auto var = g.variance();
    for (std::size_t i = 0; i < g.dim(); ++i) {
        out.z[i] = mean[i] + std::sqrt(var[i]) * epsilon[i];
    }
    return out;
}

LatentSample sample_reparameterized(const DiagonalGaussian& g, RngState& rng) {
    std::vector<double> eps(g.dim());
    for (double& e : eps) {
        e = rng.normal();
    }
    return reparameterize(g, eps);
}

}  // namespace elbokit
