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

// All divergences are in nats.

/// Result of a KL computation. Exact methods report std_error == 0 and
/// n_samples == 0.
struct KlEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Composite-Simpson grid on [lower, upper]. n_points must be odd and >= 1001.
struct QuadratureSpec {
    double lower = -40.0;
    double upper = 40.0;
    std::size_t n_points = 100001;

    void validate() const;
};

using LogDensity = std::function<double(std::span<const double>)>;
using LogDensity1d = std::function<double(double)>;

/// KL(q || p) for diagonal Gaussians:
///   sum_i  1/2 (log vp_i - log vq_i) + (vq_i + (mq_i - mp_i)^2) / (2 vp_i) - 1/2
double kl_gaussian_closed(const DiagonalGaussian& q, const DiagonalGaussian& p);

/// KL(q || N(0, I)) = -sum_j 1/2 (1 + log vq_j - vq_j - mq_j^2).
double kl_vs_standard_normal(const DiagonalGaussian& q);

/// Sample mean of log_q(z) - log_p(z) for z ~ q, with the unbiased standard
/// error. Requires n >= 2. A non-finite log density at draw k throws
/// NumericError with index k.
KlEstimate kl_monte_carlo(const DiagonalGaussian& q, const LogDensity& log_q, const LogDensity& log_p,
                          std::size_t n, RngState& rng);

/// Simpson integration of q(x) (log q(x) - log p(x)) over spec's interval.
/// Throws NumericError (index = grid position) on a non-finite integrand.
double kl_quadrature_1d(const LogDensity1d& q_logpdf, const LogDensity1d& p_logpdf,
                        const QuadratureSpec& spec);

/// Grid covering the wider of mean +/- 10 sigma for two 1-D Gaussians.
QuadratureSpec default_quadrature_spec(const DiagonalGaussian& q, const DiagonalGaussian& p,
                                       std::size_t n_points = 100001);

/// Quadrature KL for 1-D Gaussians on `spec`. Throws DimensionError for d != 1.
double kl_quadrature_gaussian_1d(const DiagonalGaussian& q, const DiagonalGaussian& p,
                                 const QuadratureSpec& spec);

/// log t <= t - 1. Throws DomainError for t <= 0.
bool log_bound_check(double t);

/// Discrete Bayes update. likelihood[z][x] = p(x | z); every row and the prior
/// must sum to one. Throws DomainError when p(evidence) == 0 or the inputs
/// are not distributions; DimensionError on shape problems.
std::vector<double> bayes_posterior(std::span<const double> prior,
                                    const std::vector<std::vector<double>>& likelihood,
                                    std::size_t evidence_index);

}  // namespace elbokit
