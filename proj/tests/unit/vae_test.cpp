// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "elbokit/dataset.hpp"
#include "elbokit/divergence.hpp"
#include "elbokit/elbo.hpp"
#include "elbokit/error.hpp"
#include "elbokit/vae.hpp"

using namespace elbokit;

namespace {

void zero_out(MlpParams& p) {
    for (auto& layer : p.layers) {
        for (double& w : layer.weight.data()) w = 0.0;
        for (double& b : layer.bias) b = 0.0;
    }
}

Matrix random_binary(RngState& rng, std::size_t n, std::size_t d) {
    Matrix x(n, d);
    for (double& v : x.data()) v = rng.uniform() < 0.5 ? 0.0 : 1.0;
    return x;
}

Dataset small_bars() {
    RngState rng(11);
    return gen_bars(96, 3, rng);
}

}  // namespace

TEST(Vae, ZeroEncoderGivesStandardNormal) {
    RngState rng(1);
    VaeModel m = make_vae(5, 3, 8, rng);
    zero_out(m.encoder);
    const auto qs = encode(m, random_binary(rng, 4, 5));
    for (const auto& q : qs) {
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(q.mean()[j], 0.0);
            EXPECT_EQ(q.variance()[j], 1.0);
        }
    }
}

TEST(Vae, LogVarianceIsClamped) {
    RngState rng(2);
    VaeModel m = make_vae(2, 1, 4, rng);
    zero_out(m.encoder);
    m.encoder.layers.back().bias = {0.0, 50.0};
    EXPECT_EQ(encode(m, Matrix(1, 2))[0].variance()[0], std::exp(10.0));
    m.encoder.layers.back().bias = {0.0, -50.0};
    EXPECT_EQ(encode(m, Matrix(1, 2))[0].variance()[0], std::exp(-10.0));
}

TEST(Vae, BernoulliLogLikelihood) {
    const std::vector<double> zeros(6, 0.0);
    const std::vector<double> x{0, 1, 1, 0, 1, 0};
    EXPECT_NEAR(bernoulli_log_likelihood(zeros, x), -6.0 * std::numbers::ln2, 1e-14);

    const std::vector<double> big(3, 40.0);
    const std::vector<double> ones(3, 1.0);
    const double ll = bernoulli_log_likelihood(big, ones);
    EXPECT_TRUE(std::isfinite(ll));
    EXPECT_LE(ll, 0.0);
    EXPECT_GT(ll, -1e-15);

    const std::vector<double> huge{800.0, -800.0};
    EXPECT_EQ(bernoulli_log_likelihood(huge, std::vector<double>{1.0, 0.0}), 0.0);
    EXPECT_EQ(bernoulli_log_likelihood(huge, std::vector<double>{0.0, 1.0}), -1600.0);

    // Soft target 0.3 at logit l: 0.3 l - log(1 + e^l).
    const std::vector<double> l{1.25};
    EXPECT_NEAR(bernoulli_log_likelihood(l, std::vector<double>{0.3}), 0.3 * 1.25 - std::log1p(std::exp(1.25)),
                1e-15);
}

TEST(Vae, ZeroNetworksOnHalfData) {
    RngState rng(3);
    VaeModel m = make_vae(6, 2, 8, rng);
    zero_out(m.encoder);
    zero_out(m.decoder);
    const Matrix x(5, 6, 0.5);
    const auto r = loss(m, x, 3, rng);
    EXPECT_EQ(r.report.kl_component, 0.0);
    EXPECT_NEAR(r.report.recon_component, 6.0 * std::numbers::ln2, 1e-14);
    EXPECT_NEAR(r.report.total_loss, 6.0 * std::numbers::ln2, 1e-14);
}

TEST(Vae, GradientMatchesFiniteDifferences) {
    RngState rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        VaeModel m = make_vae(4, 2, 8, rng);
        for (auto* net : {&m.encoder, &m.decoder})
            for (auto& layer : net->layers)
                for (double& b : layer.bias) b = rng.uniform(-0.3, 0.3);
        const Matrix x = random_binary(rng, 3, 4);
        const auto noise = draw_noise(3, 2, 2, rng);
        EXPECT_LE(vae_grad_check(m, x, noise, 1e-5), 1e-4);
    }
}

TEST(Vae, ClampedRegionHasNoLogVarianceGradient) {
    RngState rng(5);
    VaeModel m = make_vae(3, 1, 4, rng);
    m.encoder.layers.back().bias[1] = 40.0;  // far above the clamp
    const Matrix x = random_binary(rng, 2, 3);
    const auto r = loss_with_noise(m, x, draw_noise(2, 1, 1, rng));
    const auto& g = r.encoder_grads.layers.back();
    EXPECT_EQ(g.bias[1], 0.0);
    for (std::size_t i = 0; i < g.weight.cols(); ++i) EXPECT_EQ(g.weight(1, i), 0.0);
}

TEST(Vae, KlComponentIndependentOfSampleCount) {
    RngState rng(6);
    const VaeModel m = make_vae(5, 2, 8, rng);
    const Matrix x = random_binary(rng, 7, 5);
    RngState a(1), b(2);
    EXPECT_EQ(loss(m, x, 1, a).report.kl_component, loss(m, x, 3, b).report.kl_component);
}

TEST(Vae, LossDecomposesAndMatchesClosedFormKl) {
    RngState rng(7);
    const VaeModel m = make_vae(5, 3, 8, rng);
    const Matrix x = random_binary(rng, 6, 5);
    const auto r = loss(m, x, 2, rng);
    EXPECT_NEAR(r.report.total_loss, r.report.kl_component + r.report.recon_component, 1e-10);
    const auto qs = encode(m, x);
    double kl_mean = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        EXPECT_NEAR(r.datum_kl[i], kl_vs_standard_normal(qs[i]), 1e-12);
        kl_mean += r.datum_kl[i];
    }
    EXPECT_NEAR(r.report.kl_component, kl_mean / 6.0, 1e-12);
}

TEST(Vae, PerDatumLossIsNegativeElbo) {
    RngState rng(8);
    const VaeModel m = make_vae(4, 2, 8, rng);
    const Matrix x = random_binary(rng, 5, 4);
    const std::size_t samples = 3;
    const auto noise = draw_noise(5, 2, samples, rng);
    const auto r = loss_with_noise(m, x, noise);
    const auto qs = encode(m, x);
    const auto prior = DiagonalGaussian::standard(2);
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<LatentSample> draws;
        for (std::size_t l = 0; l < samples; ++l) {
            const std::vector<double> eps(noise[l].row(i).begin(), noise[l].row(i).end());
            draws.push_back(reparameterize(qs[i], eps));
        }
        const std::vector<double> xi(x.row(i).begin(), x.row(i).end());
        const auto ll = [&](std::span<const double> z) {
            return decode_log_likelihood(m, Matrix(1, 2, std::vector<double>(z.begin(), z.end())),
                                         Matrix(1, 4, xi))[0];
        };
        const auto b = elbo_from_draws(qs[i], prior, ll, draws);
        EXPECT_NEAR(r.datum_kl[i] + r.datum_recon[i], -b.elbo, 1e-10);
    }
}

TEST(Vae, Deterministic) {
    const Dataset d = small_bars();
    TrainConfig cfg;
    cfg.epochs = 5;
    cfg.batch_size = 16;
    cfg.hidden = 8;
    RngState i1(3), i2(3);
    const auto a = train(make_vae(d.data_dim, 2, 8, i1), d, cfg);
    const auto b = train(make_vae(d.data_dim, 2, 8, i2), d, cfg);
    EXPECT_EQ(a.model, b.model);
    ASSERT_EQ(a.history.size(), b.history.size());
    for (std::size_t k = 0; k < a.history.size(); ++k) EXPECT_EQ(a.history[k].total_loss, b.history[k].total_loss);
}

TEST(Vae, ZeroLearningRateKeepsParameters) {
    const Dataset d = small_bars();
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.batch_size = 32;
    cfg.adam.lr = 0.0;
    RngState init(4);
    const VaeModel start = make_vae(d.data_dim, 2, 32, init);
    const auto r = train(start, d, cfg);
    EXPECT_FALSE(r.aborted);
    EXPECT_EQ(r.model, start);
    EXPECT_EQ(r.history.size(), 9u);
}

TEST(Vae, TrainingReducesLoss) {
    const Dataset d = small_bars();
    TrainConfig cfg;
    cfg.epochs = 60;
    cfg.batch_size = 32;
    cfg.adam.lr = 1e-2;
    RngState init(5);
    const auto r = train(make_vae(d.data_dim, 2, 32, init), d, cfg);
    ASSERT_FALSE(r.aborted);
    const auto epoch_mean = [&](std::size_t e) {
        double s = 0.0;
        int c = 0;
        for (const auto& h : r.history)
            if (h.epoch == e) s += h.total_loss, ++c;
        return s / c;
    };
    EXPECT_LT(epoch_mean(59), epoch_mean(0));
    for (const auto& h : r.history) {
        EXPECT_TRUE(std::isfinite(h.kl_component));
        EXPECT_GE(h.kl_component, 0.0);
    }
}

TEST(Vae, AbortsOnOverflowAndKeepsLastGoodModel) {
    const Dataset d = small_bars();
    RngState init(6);
    VaeModel m = make_vae(d.data_dim, 2, 8, init);
    for (double& b : m.decoder.layers[0].bias) b = 100.0;  // saturate tanh at 1
    for (double& w : m.decoder.layers[1].weight.data()) w = 1e308;
    TrainConfig cfg;
    cfg.epochs = 2;
    cfg.batch_size = 32;
    cfg.hidden = 8;
    const auto r = train(m, d, cfg);
    EXPECT_TRUE(r.aborted);
    EXPECT_FALSE(r.abort_reason.empty());
    EXPECT_TRUE(r.history.empty());
    EXPECT_EQ(r.model, m);
}

TEST(Vae, Errors) {
    RngState rng(9);
    const VaeModel m = make_vae(3, 2, 4, rng);
    Matrix x(2, 3, 0.5);
    x(1, 2) = 1.5;
    EXPECT_THROW(loss(m, x, 1, rng), DomainError);
    EXPECT_THROW(loss(m, Matrix(2, 4, 0.5), 1, rng), DimensionError);
    EXPECT_THROW(loss(m, Matrix(2, 3, 0.5), 0, rng), DomainError);
    TrainConfig cfg;
    cfg.batch_size = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
}
