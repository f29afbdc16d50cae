// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "elbokit/divergence.hpp"
#include "elbokit/elbo.hpp"
#include "elbokit/error.hpp"
#include "elbokit/linear_gaussian.hpp"

using namespace elbokit;

namespace {

LinearGaussianModel scalar_model(double a, double b, double s2) {
    return {Matrix(1, 1, std::vector<double>{a}), {b}, s2};
}

// KL(N(m0, S0) || N(m1, S1)) for dense covariances, written from scratch
// with explicit 2x2-or-smaller algebra via the library-free Gauss-Jordan.
double kl_full(const std::vector<double>& m0, const Matrix& s0, const std::vector<double>& m1, const Matrix& s1) {
    const std::size_t n = m0.size();
    // Invert s1 and take both determinants with plain Gauss-Jordan elimination.
    Matrix inv = Matrix::identity(n);
    Matrix a = s1;
    double det1 = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        const double piv = a(c, c);
        det1 *= piv;
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= piv;
            inv(c, k) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(r, k) -= f * a(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    Matrix b = s0;
    double det0 = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        const double piv = b(c, c);
        det0 *= piv;
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = b(r, c) / piv;
            for (std::size_t k = c; k < n; ++k) b(r, k) -= f * b(c, k);
        }
    }
    double trace = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            trace += inv(i, j) * s0(j, i);
            quad += (m1[i] - m0[i]) * inv(i, j) * (m1[j] - m0[j]);
        }
    }
    return 0.5 * (trace + quad - static_cast<double>(n) + std::log(det1 / det0));
}

}  // namespace

TEST(LinearGaussian, ZeroDecoderGivesNoiseMarginal) {
    LinearGaussianModel m{Matrix(2, 3), {0.5, -1.0}, 1.0};
    const std::vector<double> x{0.1, 0.2};
    const double expected = -std::log(2.0 * std::numbers::pi) - 0.5 * (0.4 * 0.4 + 1.2 * 1.2);
    EXPECT_NEAR(exact_log_marginal(m, x), expected, 1e-14);
}

TEST(LinearGaussian, ScalarMarginal) {
    // a = 1, b = 0, s2 = 1, x = 0: marginal N(0, 2), log p = -0.5 log(4 pi).
    const auto m = scalar_model(1.0, 0.0, 1.0);
    EXPECT_NEAR(exact_log_marginal(m, std::vector<double>{0.0}), -1.265512123484645, 1e-14);
}

TEST(LinearGaussian, ScalarPosterior) {
    // a = 1, b = 0, s2 = 1, x = 2: posterior N(1, 0.5).
    const auto post = exact_posterior(scalar_model(1.0, 0.0, 1.0), std::vector<double>{2.0});
    EXPECT_NEAR(post.mean[0], 1.0, 1e-15);
    EXPECT_NEAR(post.covariance(0, 0), 0.5, 1e-15);
}

TEST(LinearGaussian, ZeroDecoderPosteriorIsPrior) {
    LinearGaussianModel m{Matrix(3, 2), {1, 2, 3}, 0.7};
    const auto post = exact_posterior(m, std::vector<double>{4, 5, 6});
    EXPECT_EQ(post.covariance, Matrix::identity(2));
    for (double v : post.mean) EXPECT_EQ(v, 0.0);
}

TEST(LinearGaussian, MarginalInvariantToLatentPermutation) {
    RngState rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_linear_gaussian(3, 4, rng);
        const auto x = sample_data(m, rng);
        LinearGaussianModel swapped = m;
        for (std::size_t d = 0; d < 4; ++d) std::swap(swapped.decoder_weight(d, 0), swapped.decoder_weight(d, 2));
        EXPECT_NEAR(exact_log_marginal(m, x), exact_log_marginal(swapped, x), 1e-12);
    }
}

TEST(LinearGaussian, PosteriorCovarianceIsSymmetricPositiveDefinite) {
    RngState rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_linear_gaussian(1 + rng.below(4), 1 + rng.below(5), rng);
        const auto post = exact_posterior(m, sample_data(m, rng));
        const auto& c = post.covariance;
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) EXPECT_EQ(c(i, j), c(j, i));
        EXPECT_NO_THROW(cholesky(c));
    }
}

TEST(LinearGaussian, BoundIsTightAtOneDimensionalPosterior) {
    RngState rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_linear_gaussian(1, 3, rng);
        const auto x = sample_data(m, rng);
        const auto q = exact_posterior(m, x).diagonal();
        const auto g = bound_gap(m, x, q, 10000, rng);
        EXPECT_LE(std::abs(g.gap), 4.0 * g.std_error);
        // The single-integrand form is exactly constant under the posterior.
        const auto draws = draw_latents(q, 50, rng);
        const auto joint = elbo_joint_form(q, DiagonalGaussian::standard(1),
                                           [&](std::span<const double> z) { return m.log_likelihood(z, x); }, draws);
        EXPECT_NEAR(joint.value, g.log_marginal, 1e-9);
        EXPECT_LE(joint.std_error, 1e-9);
    }
}

TEST(LinearGaussian, PriorAsQLeavesGapEqualToPriorPosteriorKl) {
    RngState rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = random_linear_gaussian(2, 3, rng);
        const auto x = sample_data(m, rng);
        const auto q = DiagonalGaussian::standard(2);
        const auto g = bound_gap(m, x, q, 100000, rng);
        const auto post = exact_posterior(m, x);
        const double kl = kl_full({0.0, 0.0}, Matrix::identity(2), post.mean, post.covariance);
        EXPECT_GT(kl, 0.0);
        EXPECT_LE(std::abs(g.gap - kl), 4.0 * g.std_error + 1e-12);
    }
}

TEST(LinearGaussian, RandomVariationalFamiliesStayBelowEvidence) {
    RngState rng(5);
    int ok = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const auto m = random_linear_gaussian(2, 4, rng);
        const auto x = sample_data(m, rng);
        std::vector<double> mu(2), var(2);
        for (std::size_t j = 0; j < 2; ++j) {
            mu[j] = rng.normal();
            var[j] = std::exp(rng.uniform(-2.0, 1.0));
        }
        const auto g = bound_gap(m, x, DiagonalGaussian(mu, var), 10000, rng);
        if (g.gap >= -4.0 * g.std_error) ++ok;
    }
    EXPECT_GE(ok, 198);
}

TEST(LinearGaussian, GapMatchesDiagonalToPosteriorKl) {
    RngState rng(6);
    const auto m = random_linear_gaussian(2, 4, rng);
    const auto x = sample_data(m, rng);
    const DiagonalGaussian q({0.3, -0.1}, {0.6, 0.4});
    const auto g = bound_gap(m, x, q, 200000, rng);
    const auto post = exact_posterior(m, x);
    Matrix s0(2, 2);
    s0(0, 0) = 0.6;
    s0(1, 1) = 0.4;
    const double kl = kl_full({0.3, -0.1}, s0, post.mean, post.covariance);
    EXPECT_LE(std::abs(g.gap - kl), 4.0 * g.std_error);
}

TEST(LinearGaussian, Validation) {
    LinearGaussianModel m{Matrix(2, 1), {0.0}, 1.0};
    EXPECT_THROW(m.validate(), DimensionError);
    m.decoder_bias = {0.0, 0.0};
    m.obs_variance = 0.0;
    EXPECT_THROW(m.validate(), DomainError);
    m.obs_variance = 1.0;
    EXPECT_NO_THROW(m.validate());
    EXPECT_THROW(exact_log_marginal(m, std::vector<double>{1.0}), DimensionError);
    RngState rng(1);
    EXPECT_THROW(random_linear_gaussian(17, 2, rng), DimensionError);
}
