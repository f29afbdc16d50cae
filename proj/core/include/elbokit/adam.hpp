// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "elbokit/mlp.hpp"

namespace elbokit {

struct AdamHyper {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// First and second moment estimates plus the step count. Sized to the
/// flattened parameter vector it updates.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t step = 0;

    static AdamState for_size(std::size_t n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0}; }

    friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// Bias-corrected Adam:
///   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
///   p <- p - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamHyper& hyper);

/// Same update over a network; state is indexed in flatten() order.
void adam_step(MlpParams& params, const Gradients& grads, AdamState& state, const AdamHyper& hyper);

}  // namespace elbokit
