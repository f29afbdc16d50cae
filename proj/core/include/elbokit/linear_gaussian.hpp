// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elbokit/elbo.hpp"
#include "elbokit/gaussian.hpp"
#include "elbokit/matrix.hpp"
#include "elbokit/rng.hpp"

namespace elbokit {

/// z ~ N(0, I_J),  x | z ~ N(A z + b, s2 I_D).
///
/// The marginal is N(b, A A^T + s2 I) and the posterior is Gaussian, so both
/// sides of the evidence bound are available exactly. Sizes are capped at
/// kMaxDim so the dense Cholesky routines stay trivial.
struct LinearGaussianModel {
    static constexpr std::size_t kMaxDim = 16;

    Matrix decoder_weight;  // D x J
    std::vector<double> decoder_bias;
    double obs_variance = 1.0;

    std::size_t latent_dim() const noexcept { return decoder_weight.cols(); }
    std::size_t data_dim() const noexcept { return decoder_weight.rows(); }

    void validate() const;

    /// log N(x; A z + b, s2 I).
    double log_likelihood(std::span<const double> z, std::span<const double> x) const;
};

/// Gaussian with a dense covariance.
struct FullGaussian {
    std::vector<double> mean;
    Matrix covariance;

    /// Marginals only; exact when the covariance is diagonal.
    DiagonalGaussian diagonal() const;
};

double exact_log_marginal(const LinearGaussianModel& model, std::span<const double> x);

/// Covariance (I + A^T A / s2)^-1, mean cov A^T (x - b) / s2.
FullGaussian exact_posterior(const LinearGaussianModel& model, std::span<const double> x);

struct BoundGap {
    double gap = 0.0;        // log p(x) - elbo
    double std_error = 0.0;  // of the ELBO's reconstruction estimate
    double log_marginal = 0.0;
    ElboBreakdown elbo;
};

/// Slack of log p(x) >= ELBO(q) with an L-sample reconstruction estimate.
/// In expectation the gap equals KL(q || p(z | x)) >= 0.
BoundGap bound_gap(const LinearGaussianModel& model, std::span<const double> x, const DiagonalGaussian& q,
                   std::size_t samples, RngState& rng);

/// Random model: A and b entries N(0, 1), s2 uniform in [0.25, 2].
LinearGaussianModel random_linear_gaussian(std::size_t latent_dim, std::size_t data_dim, RngState& rng);

/// Ancestral draw x = A z + b + sqrt(s2) e.
std::vector<double> sample_data(const LinearGaussianModel& model, RngState& rng);

}  // namespace elbokit
