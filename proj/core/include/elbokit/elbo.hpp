// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "elbokit/gaussian.hpp"
#include "elbokit/rng.hpp"

namespace elbokit {

/// Per-datum evidence lower bound split into its regularizer and
/// reconstruction parts:
///   elbo = -KL(q || prior) + (1/L) sum_l log p(x | z_l)
/// The KL part is always the closed form; only the reconstruction is sampled.
struct ElboBreakdown {
    double neg_kl_term = 0.0;
    double recon_term = 0.0;
    double elbo = 0.0;
    std::size_t n_recon_samples = 0;
    /// Standard error of recon_term (unbiased sample std / sqrt(L)); 0 for L == 1.
    double recon_std_error = 0.0;
};

/// A Monte-Carlo sample mean with its standard error.
struct SampleMean {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// log p(x | z) for a fixed datum x.
using LogLikelihood = std::function<double(std::span<const double>)>;

/// L reparameterized draws from q.
std::vector<LatentSample> draw_latents(const DiagonalGaussian& q, std::size_t count, RngState& rng);

/// ELBO on caller-supplied (frozen) draws. Throws NumericError (index = draw)
/// if the log-likelihood is non-finite at some z.
ElboBreakdown elbo_from_draws(const DiagonalGaussian& q, const DiagonalGaussian& prior,
                              const LogLikelihood& log_likelihood, std::span<const LatentSample> draws);

/// ELBO with L fresh draws from `rng`.
ElboBreakdown elbo_estimate(const DiagonalGaussian& q, const DiagonalGaussian& prior,
                            const LogLikelihood& log_likelihood, std::size_t samples, RngState& rng);

/// Single-integrand form: mean over draws of log p(x|z) + log p(z) - log q(z).
SampleMean elbo_joint_form(const DiagonalGaussian& q, const DiagonalGaussian& prior,
                           const LogLikelihood& log_likelihood, std::span<const LatentSample> draws);

}  // namespace elbokit
