// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "elbokit/divergence.hpp"
#include "elbokit/elbo.hpp"
#include "elbokit/mlp.hpp"
#include "elbokit/vae.hpp"

using namespace elbokit;

static void BM_KlClosed(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    RngState rng(1);
    std::vector<double> mq(dim), vq(dim), mp(dim), vp(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        mq[j] = rng.normal();
        mp[j] = rng.normal();
        vq[j] = rng.uniform(0.1, 2.0);
        vp[j] = rng.uniform(0.1, 2.0);
    }
    const DiagonalGaussian q(mq, vq), p(mp, vp);
    for (auto _ : state) benchmark::DoNotOptimize(kl_gaussian_closed(q, p));
}
BENCHMARK(BM_KlClosed)->Arg(2)->Arg(64);

static void BM_KlQuadrature(benchmark::State& state) {
    const DiagonalGaussian q({0.3}, {0.7}), p({-0.5}, {1.8});
    const auto spec = default_quadrature_spec(q, p, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kl_quadrature_gaussian_1d(q, p, spec));
}
BENCHMARK(BM_KlQuadrature)->Arg(1001)->Arg(100001);

static void BM_ElboEstimate(benchmark::State& state) {
    RngState rng(2);
    const DiagonalGaussian q({0.1, -0.2}, {0.5, 0.9});
    const auto prior = DiagonalGaussian::standard(2);
    const auto ll = [](std::span<const double> z) { return -0.5 * (z[0] * z[0] + z[1] * z[1]); };
    for (auto _ : state) benchmark::DoNotOptimize(elbo_estimate(q, prior, ll, 1000, rng).elbo);
}
BENCHMARK(BM_ElboEstimate);

static void BM_MlpForwardBackward(benchmark::State& state) {
    RngState rng(3);
    const std::size_t widths[] = {16, 32, 4};
    const MlpParams p = make_mlp(widths, Activation::Tanh, Activation::Identity, rng);
    Matrix x(64, 16);
    for (double& v : x.data()) v = rng.normal();
    const Matrix up(64, 4, 1.0);
    for (auto _ : state) {
        const auto fwd = forward(p, x);
        benchmark::DoNotOptimize(backward(p, fwd.tape, up).grads);
    }
}
BENCHMARK(BM_MlpForwardBackward);

static void BM_VaeLoss(benchmark::State& state) {
    RngState rng(4);
    const VaeModel m = make_vae(16, 2, 32, rng);
    Matrix x(64, 16);
    for (double& v : x.data()) v = rng.uniform() < 0.25 ? 1.0 : 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(loss(m, x, 1, rng).report.total_loss);
}
BENCHMARK(BM_VaeLoss);

BENCHMARK_MAIN();
