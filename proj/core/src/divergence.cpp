// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elbokit/error.hpp"

namespace elbokit {

void QuadratureSpec::validate() const {
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
        throw DomainError("QuadratureSpec: need finite lower < upper");
    }
    if (n_points < 1001 || n_points % 2 == 0) {
        throw DomainError("QuadratureSpec: n_points must be odd and >= 1001");
    }
}

double kl_gaussian_closed(const DiagonalGaussian& q, const DiagonalGaussian& p) {
    detail::require_same_size(q.dim(), p.dim(), "kl_gaussian_closed");
    const auto mq = q.mean();
    const auto vq = q.variance();
    const auto mp = p.mean();
    const auto vp = p.variance();
    double total = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        const double diff = mq[i] - mp[i];
        total += 0.5 * (std::log(vp[i]) - std::log(vq[i])) + (vq[i] + diff * diff) / (2.0 * vp[i]) -
                 0.5;
    }
    return total;
}

double kl_vs_standard_normal(const DiagonalGaussian& q) {
    const auto mu = q.mean();
    const auto var = q.variance();
    double total = 0.0;
    for (std::size_t j = 0; j < q.dim(); ++j) {
        total += 0.5 * (1.0 + std::log(var[j]) - var[j] - mu[j] * mu[j]);
    }
    return -total;
}

KlEstimate kl_monte_carlo(const DiagonalGaussian& q, const LogDensity& log_q, const LogDensity& log_p,
                          std::size_t n, RngState& rng) {
    if (n < 2) {
        throw DomainError("kl_monte_carlo: need at least 2 samples");
    }
    // Welford accumulation keeps the variance stable for large n.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const LatentSample s = sample_reparameterized(q, rng);
        const double lq = log_q(s.z);
        const double lp = log_p(s.z);
        const double delta = lq - lp;
        if (!std::isfinite(delta)) {
            throw NumericError("kl_monte_carlo: non-finite log density at draw " + std::to_string(k), k);
        }
        const double step = delta - mean;
        mean += step / static_cast<double>(k + 1);
        m2 += step * (delta - mean);
    }
    const double sample_var = m2 / static_cast<double>(n - 1);
    return {mean, std::sqrt(sample_var / static_cast<double>(n)), n};
}

double kl_quadrature_1d(const LogDensity1d& q_logpdf, const LogDensity1d& p_logpdf,
                        const QuadratureSpec& spec) {
    spec.validate();
    const std::size_t intervals = spec.n_points - 1;
    const double h = (spec.upper - spec.lower) / static_cast<double>(intervals);
    double sum = 0.0;
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double x = k == intervals ? spec.upper : spec.lower + h * static_cast<double>(k);
        const double lq = q_logpdf(x);
        const double lp = p_logpdf(x);
        const double qx = std::exp(lq);
        // q underflows long before log q - log p blows up; 0 * finite is the limit.
        const double value = qx == 0.0 && std::isfinite(lq - lp) ? 0.0 : qx * (lq - lp);
        if (!std::isfinite(value)) {
            throw NumericError("kl_quadrature_1d: non-finite integrand at x = " + std::to_string(x), k);
        }
        const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += weight * value;
    }
    return sum * h / 3.0;
}

QuadratureSpec default_quadrature_spec(const DiagonalGaussian& q, const DiagonalGaussian& p,
                                       std::size_t n_points) {
    if (q.dim() != 1 || p.dim() != 1) {
        throw DimensionError("default_quadrature_spec: 1-D distributions required");
    }
    const double sq = std::sqrt(q.variance()[0]);
    const double sp = std::sqrt(p.variance()[0]);
    QuadratureSpec spec;
    spec.lower = std::min(q.mean()[0] - 10.0 * sq, p.mean()[0] - 10.0 * sp);
    spec.upper = std::max(q.mean()[0] + 10.0 * sq, p.mean()[0] + 10.0 * sp);
    spec.n_points = n_points;
    return spec;
}

double kl_quadrature_gaussian_1d(const DiagonalGaussian& q, const DiagonalGaussian& p,
                                 const QuadratureSpec& spec) {
    if (q.dim() != 1 || p.dim() != 1) {
        throw DimensionError("kl_quadrature_gaussian_1d: 1-D distributions required");
    }
    return kl_quadrature_1d([&q](double x) { return log_pdf(q, std::span<const double>(&x, 1)); },
                            [&p](double x) { return log_pdf(p, std::span<const double>(&x, 1)); },
                            spec);
}

bool log_bound_check(double t) {
    if (!(t > 0.0)) {
        throw DomainError("log_bound_check: t must be positive");
    }
    return std::log(t) <= t - 1.0;
}

std::vector<double> bayes_posterior(std::span<const double> prior,
                                    const std::vector<std::vector<double>>& likelihood,
                                    std::size_t evidence_index) {
    constexpr double kSumTolerance = 1e-9;
    if (prior.empty()) {
        throw DimensionError("bayes_posterior: empty prior");
    }
    detail::require_same_size(likelihood.size(), prior.size(), "bayes_posterior likelihood rows");

    double prior_sum = 0.0;
    for (double p : prior) {
        if (p < 0.0 || !std::isfinite(p)) {
            throw DomainError("bayes_posterior: prior entries must be finite and non-negative");
        }
        prior_sum += p;
    }
    if (std::abs(prior_sum - 1.0) > kSumTolerance) {
        throw DomainError("bayes_posterior: prior does not sum to 1");
    }

    const std::size_t n_evidence = likelihood.front().size();
    if (evidence_index >= n_evidence) {
        throw DimensionError("bayes_posterior: evidence index out of range");
    }
    for (std::size_t z = 0; z < likelihood.size(); ++z) {
        detail::require_same_size(likelihood[z].size(), n_evidence, "bayes_posterior likelihood row");
        double row_sum = 0.0;
        for (double v : likelihood[z]) {
            if (v < 0.0 || !std::isfinite(v)) {
                throw DomainError("bayes_posterior: likelihood entries must be finite and non-negative");
            }
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > kSumTolerance) {
            throw DomainError("bayes_posterior: likelihood row " + std::to_string(z) +
                              " does not sum to 1");
        }
    }

    std::vector<double> joint(prior.size());
    double evidence = 0.0;
    for (std::size_t z = 0; z < prior.size(); ++z) {
        joint[z] = likelihood[z][evidence_index] * prior[z];
        evidence += joint[z];
    }
    if (!(evidence > 0.0)) {
        throw DomainError("bayes_posterior: evidence has zero probability");
    }
    for (double& v : joint) {
        v /= evidence;
    }
    return joint;
}

}  // namespace elbokit
