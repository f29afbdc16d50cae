// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/linear_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "elbokit/error.hpp"

namespace elbokit {

namespace {
const double kLogTwoPi = std::log(2.0 * std::numbers::pi);
}

void LinearGaussianModel::validate() const {
    if (latent_dim() == 0 || data_dim() == 0) {
        throw DimensionError("LinearGaussianModel: dimensions must be positive");
    }
    if (latent_dim() > kMaxDim || data_dim() > kMaxDim) {
        throw DimensionError("LinearGaussianModel: dimensions are capped at " + std::to_string(kMaxDim));
    }
    detail::require_same_size(decoder_bias.size(), data_dim(), "LinearGaussianModel bias");
    if (!(obs_variance > 0.0) || !std::isfinite(obs_variance)) {
        throw DomainError("LinearGaussianModel: observation variance must be positive");
    }
}

double LinearGaussianModel::log_likelihood(std::span<const double> z, std::span<const double> x) const {
    detail::require_same_size(z.size(), latent_dim(), "log_likelihood z");
    detail::require_same_size(x.size(), data_dim(), "log_likelihood x");
    double sq = 0.0;
    for (std::size_t d = 0; d < data_dim(); ++d) {
        double mean = decoder_bias[d];
        const auto a_row = decoder_weight.row(d);
        for (std::size_t j = 0; j < latent_dim(); ++j) {
            mean += a_row[j] * z[j];
        }
        const double r = x[d] - mean;
        sq += r * r;
    }
    const auto dim = static_cast<double>(data_dim());
    return -0.5 * dim * (kLogTwoPi + std::log(obs_variance)) - 0.5 * sq / obs_variance;
}

DiagonalGaussian FullGaussian::diagonal() const {
    std::vector<double> var(mean.size());
    for (std::size_t i = 0; i < var.size(); ++i) {
        var[i] = covariance(i, i);
    }
    return DiagonalGaussian(mean, std::move(var));
}

double exact_log_marginal(const LinearGaussianModel& model, std::span<const double> x) {
    model.validate();
    detail::require_same_size(x.size(), model.data_dim(), "exact_log_marginal x");
    const std::size_t dim = model.data_dim();
    Matrix cov = matmul(model.decoder_weight, model.decoder_weight.transposed());
    for (std::size_t i = 0; i < dim; ++i) {
        cov(i, i) += model.obs_variance;
    }
    const Matrix chol = cholesky(cov);
    std::vector<double> centered(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        centered[i] = x[i] - model.decoder_bias[i];
    }
    const auto solved = cholesky_solve(chol, centered);
    double quad = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        quad += centered[i] * solved[i];
    }
    return -0.5 * (static_cast<double>(dim) * kLogTwoPi + cholesky_log_det(chol) + quad);
}

FullGaussian exact_posterior(const LinearGaussianModel& model, std::span<const double> x) {
    model.validate();
    detail::require_same_size(x.size(), model.data_dim(), "exact_posterior x");
    const std::size_t latent = model.latent_dim();
    const Matrix& a = model.decoder_weight;
    const double inv_s2 = 1.0 / model.obs_variance;

    Matrix precision = matmul(a.transposed(), a);
    for (double& v : precision.data()) v *= inv_s2;
    for (std::size_t j = 0; j < latent; ++j) precision(j, j) += 1.0;

    const Matrix chol = cholesky(precision);
    std::vector<double> rhs(latent, 0.0);
    for (std::size_t d = 0; d < model.data_dim(); ++d) {
        const double r = (x[d] - model.decoder_bias[d]) * inv_s2;
        for (std::size_t j = 0; j < latent; ++j) {
            rhs[j] += a(d, j) * r;
        }
    }
    return {cholesky_solve(chol, rhs), cholesky_inverse(chol)};
}

BoundGap bound_gap(const LinearGaussianModel& model, std::span<const double> x, const DiagonalGaussian& q,
                   std::size_t samples, RngState& rng) {
    model.validate();
    detail::require_same_size(q.dim(), model.latent_dim(), "bound_gap q");
    const std::vector<double> datum(x.begin(), x.end());
    const LogLikelihood ll = [&model, &datum](std::span<const double> z) {
        return model.log_likelihood(z, datum);
    };
    BoundGap out;
    out.log_marginal = exact_log_marginal(model, x);
    out.elbo = elbo_estimate(q, DiagonalGaussian::standard(model.latent_dim()), ll, samples, rng);
    out.gap = out.log_marginal - out.elbo.elbo;
    out.std_error = out.elbo.recon_std_error;
    return out;
}

LinearGaussianModel random_linear_gaussian(std::size_t latent_dim, std::size_t data_dim, RngState& rng) {
    LinearGaussianModel model;
    model.decoder_weight = Matrix(data_dim, latent_dim);
    for (double& v : model.decoder_weight.data()) v = rng.normal();
    model.decoder_bias.resize(data_dim);
    for (double& v : model.decoder_bias) v = rng.normal();
    model.obs_variance = rng.uniform(0.25, 2.0);
    model.validate();
    return model;
}

std::vector<double> sample_data(const LinearGaussianModel& model, RngState& rng) {
    std::vector<double> z(model.latent_dim());
    for (double& v : z) v = rng.normal();
    std::vector<double> x(model.data_dim());
    const double s = std::sqrt(model.obs_variance);
    for (std::size_t d = 0; d < model.data_dim(); ++d) {
        double mean = model.decoder_bias[d];
        for (std::size_t j = 0; j < model.latent_dim(); ++j) mean += model.decoder_weight(d, j) * z[j];
        x[d] = mean + s * rng.normal();
    }
    return x;
}

}  // namespace elbokit
