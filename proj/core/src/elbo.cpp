// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/elbo.hpp"

#include <cmath>
#include <string>

#include "elbokit/divergence.hpp"
#include "elbokit/error.hpp"

namespace elbokit {

namespace {

// Welford running mean/variance.
struct Accumulator {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;

    void push(double x) {
        ++n;
        const double step = x - mean;
        mean += step / static_cast<double>(n);
        m2 += step * (x - mean);
    }

    double std_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

void check_finite(double v, std::span<const double> z, std::size_t index) {
    if (std::isfinite(v)) return;
    std::string where = "[";
    for (std::size_t i = 0; i < z.size(); ++i) {
        where += (i ? ", " : "") + std::to_string(z[i]);
    }
    where += "]";
    throw NumericError("non-finite log-likelihood at draw " + std::to_string(index) + ", z = " + where, index);
}

}  // namespace

std::vector<LatentSample> draw_latents(const DiagonalGaussian& q, std::size_t count, RngState& rng) {
    std::vector<LatentSample> draws;
    draws.reserve(count);
    for (std::size_t l = 0; l < count; ++l) {
        draws.push_back(sample_reparameterized(q, rng));
    }
    return draws;
}

ElboBreakdown elbo_from_draws(const DiagonalGaussian& q, const DiagonalGaussian& prior,
                              const LogLikelihood& log_likelihood, std::span<const LatentSample> draws) {
    if (draws.empty()) {
        throw DomainError("elbo: need at least one reconstruction sample");
    }
    detail::require_same_size(q.dim(), prior.dim(), "elbo q/prior");

    Accumulator recon;
    for (std::size_t l = 0; l < draws.size(); ++l) {
        detail::require_same_size(draws[l].z.size(), q.dim(), "elbo draw");
        const double ll = log_likelihood(draws[l].z);
        check_finite(ll, draws[l].z, l);
        recon.push(ll);
    }

    ElboBreakdown out;
    out.neg_kl_term = -kl_gaussian_closed(q, prior);
    out.recon_term = recon.mean;
    out.elbo = out.neg_kl_term + out.recon_term;
    out.n_recon_samples = draws.size();
    out.recon_std_error = recon.std_error();
    return out;
}

ElboBreakdown elbo_estimate(const DiagonalGaussian& q, const DiagonalGaussian& prior,
                            const LogLikelihood& log_likelihood, std::size_t samples, RngState& rng) {
    if (samples == 0) {
        throw DomainError("elbo_estimate: L must be at least 1");
    }
    const auto draws = draw_latents(q, samples, rng);
    return elbo_from_draws(q, prior, log_likelihood, draws);
}

SampleMean elbo_joint_form(const DiagonalGaussian& q, const DiagonalGaussian& prior,
                           const LogLikelihood& log_likelihood, std::span<const LatentSample> draws) {
    if (draws.empty()) {
        throw DomainError("elbo_joint_form: need at least one sample");
    }
    Accumulator acc;
    for (std::size_t l = 0; l < draws.size(); ++l) {
        const auto& z = draws[l].z;
        const double ll = log_likelihood(z);
        check_finite(ll, z, l);
        acc.push(ll + log_pdf(prior, z) - log_pdf(q, z));
    }
    return {acc.mean, acc.std_error(), acc.n};
}

}  // namespace elbokit
