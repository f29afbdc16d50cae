// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "elbokit/adam.hpp"
#include "elbokit/error.hpp"
#include "elbokit/rng.hpp"

using namespace elbokit;

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
    std::vector<double> p{1.5, -2.0, 0.25};
    const auto start = p;
    const std::vector<double> g(3, 0.0);
    AdamState s = AdamState::for_size(3);
    for (int t = 0; t < 100; ++t) adam_step(p, g, s, AdamHyper{});
    EXPECT_EQ(p, start);
    EXPECT_EQ(s.step, 100u);
}

TEST(Adam, ConstantGradientStepsAtLearningRate) {
    // With a constant gradient the bias-corrected ratio is exactly g/|g|,
    // so every step moves lr * g / (|g| + eps).
    const AdamHyper hyper;
    std::vector<double> p{0.0, 0.0};
    const std::vector<double> g{0.5, -3.0};
    AdamState s = AdamState::for_size(2);
    for (int t = 0; t < 1000; ++t) adam_step(p, g, s, hyper);
    EXPECT_NEAR(p[0], -1000 * hyper.lr * 0.5 / (0.5 + hyper.epsilon), 1e-9);
    EXPECT_NEAR(p[1], 1000 * hyper.lr * 3.0 / (3.0 + hyper.epsilon), 1e-9);
}

TEST(Adam, FirstStepByHand) {
    const AdamHyper hyper{0.1, 0.8, 0.9, 0.0};
    std::vector<double> p{1.0};
    const std::vector<double> g{2.0};
    AdamState s = AdamState::for_size(1);
    adam_step(p, g, s, hyper);
    // m = 0.4, v = 0.4; mhat = 2, vhat = 4 -> step 0.1 * 2 / 2
    EXPECT_NEAR(s.m[0], 0.4, 1e-15);
    EXPECT_NEAR(s.v[0], 0.4, 1e-15);
    EXPECT_NEAR(p[0], 0.9, 1e-15);
}

TEST(Adam, Deterministic) {
    RngState rng(9);
    std::vector<double> a(20), g(20);
    for (double& v : a) v = rng.normal();
    auto b = a;
    AdamState sa = AdamState::for_size(20), sb = AdamState::for_size(20);
    for (int t = 0; t < 50; ++t) {
        for (double& v : g) v = rng.normal();
        adam_step(a, g, sa, AdamHyper{});
        adam_step(b, g, sb, AdamHyper{});
    }
    EXPECT_EQ(a, b);
    EXPECT_EQ(sa, sb);
}

TEST(Adam, ZeroLearningRateIsNoOp) {
    std::vector<double> p{3.0, 4.0};
    const auto start = p;
    AdamState s = AdamState::for_size(2);
    AdamHyper hyper;
    hyper.lr = 0.0;
    for (int t = 0; t < 10; ++t) adam_step(p, std::vector<double>{1.0, -7.0}, s, hyper);
    EXPECT_EQ(p, start);
}

TEST(Adam, SizeMismatchThrows) {
    std::vector<double> p(3);
    AdamState s = AdamState::for_size(2);
    EXPECT_THROW(adam_step(p, std::vector<double>(3), s, AdamHyper{}), DimensionError);
}
