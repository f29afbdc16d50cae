// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "elbokit/error.hpp"
#include "elbokit/grad_check.hpp"
#include "elbokit/mlp.hpp"
#include "elbokit/rng.hpp"

using namespace elbokit;

namespace {

// f(W) = 0.5 |W x|^2 for a single linear layer, with gradient (W x) x^T.
ValueAndGradient quadratic(const MlpParams& p, const std::vector<double>& x) {
    const auto& layer = p.layers[0];
    ValueAndGradient out;
    out.grads = Gradients::zeros_like(p);
    for (std::size_t o = 0; o < layer.out(); ++o) {
        double y = 0.0;
        for (std::size_t i = 0; i < layer.in(); ++i) y += layer.weight(o, i) * x[i];
        out.value += 0.5 * y * y;
        for (std::size_t i = 0; i < layer.in(); ++i) out.grads.layers[0].weight(o, i) = y * x[i];
    }
    return out;
}

}  // namespace

TEST(GradCheck, QuadraticOfLinearLayer) {
    RngState rng(10);
    const std::size_t widths[] = {4, 3};
    MlpParams p = make_mlp(widths, Activation::Identity, Activation::Identity, rng);
    const std::vector<double> x{0.3, -1.2, 0.7, 2.0};
    const double err = grad_check(p, [&](const MlpParams& q) { return quadratic(q, x); }, 1e-5);
    EXPECT_LE(err, 1e-6);
}

TEST(GradCheck, ConstantObjectiveHasZeroError) {
    const std::vector<double> w{1, 2, 3};
    const std::vector<double> zero(3, 0.0);
    const auto f = [](std::span<const double>) { return 4.2; };
    EXPECT_EQ(grad_check(w, f, zero, 1e-5), 0.0);
}

TEST(GradCheck, DetectsWrongGradient) {
    const std::vector<double> w{1, 2};
    const auto f = [](std::span<const double> v) { return v[0] * v[0] + 3.0 * v[1]; };
    const std::vector<double> good{2.0, 3.0};
    const std::vector<double> bad{2.0, 3.3};
    EXPECT_LE(grad_check(w, f, good, 1e-5), 1e-8);
    EXPECT_NEAR(grad_check(w, f, bad, 1e-5), 0.3 / 3.3, 1e-8);
}

TEST(GradCheck, StepOutsideRangeThrows) {
    const std::vector<double> w{1};
    const auto f = [](std::span<const double> v) { return v[0]; };
    EXPECT_THROW(central_difference_gradient(w, f, 1e-8), DomainError);
    EXPECT_THROW(central_difference_gradient(w, f, 1e-2), DomainError);
    EXPECT_NO_THROW(central_difference_gradient(w, f, 1e-7));
    EXPECT_NO_THROW(central_difference_gradient(w, f, 1e-3));
}

TEST(GradCheck, NonFiniteProbeReportsIndex) {
    const std::vector<double> w{1.0, 1e-6};
    const auto f = [](std::span<const double> v) { return v[0] + std::log(v[1]); };
    try {
        central_difference_gradient(w, f, 1e-5);
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(GradCheck, RelativeErrorFloor) {
    const std::vector<double> a{0.0, 1e-12};
    const std::vector<double> n{0.0, 0.0};
    EXPECT_NEAR(max_relative_error(a, n), 1e-4, 1e-18);
    EXPECT_THROW(max_relative_error(a, std::vector<double>{0.0}), DimensionError);
}
