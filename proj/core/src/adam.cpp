// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/adam.hpp"

#include <cmath>

#include "elbokit/error.hpp"

namespace elbokit {

namespace {

struct Corrections {
    double first;
    double second;
};

Corrections advance(AdamState& state, const AdamHyper& hyper) {
    ++state.step;
    const auto t = static_cast<double>(state.step);
    return {1.0 - std::pow(hyper.beta1, t), 1.0 - std::pow(hyper.beta2, t)};
}

inline void update_one(double& p, double g, double& m, double& v, const AdamHyper& hyper,
                       const Corrections& c) {
    m = hyper.beta1 * m + (1.0 - hyper.beta1) * g;
    v = hyper.beta2 * v + (1.0 - hyper.beta2) * g * g;
    const double m_hat = m / c.first;
    const double v_hat = v / c.second;
    p -= hyper.lr * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
}

}  // namespace

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamHyper& hyper) {
    detail::require_same_size(params.size(), grads.size(), "adam_step grads");
    detail::require_same_size(state.m.size(), params.size(), "adam_step first moment");
    detail::require_same_size(state.v.size(), params.size(), "adam_step second moment");
    const Corrections c = advance(state, hyper);
    for (std::size_t i = 0; i < params.size(); ++i) {
        update_one(params[i], grads[i], state.m[i], state.v[i], hyper, c);
    }
}

void adam_step(MlpParams& params, const Gradients& grads, AdamState& state, const AdamHyper& hyper) {
    if (!grads.congruent_with(params)) {
        throw DimensionError("adam_step: gradients are not shape-congruent with params");
    }
    const std::size_t n = params.parameter_count();
    detail::require_same_size(state.m.size(), n, "adam_step first moment");
    detail::require_same_size(state.v.size(), n, "adam_step second moment");
    const Corrections c = advance(state, hyper);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < params.layers.size(); ++k) {
        auto w = params.layers[k].weight.data();
        const auto gw = grads.layers[k].weight.data();
        for (std::size_t i = 0; i < w.size(); ++i, ++offset) {
            update_one(w[i], gw[i], state.m[offset], state.v[offset], hyper, c);
        }
        auto& b = params.layers[k].bias;
        const auto& gb = grads.layers[k].bias;
        for (std::size_t i = 0; i < b.size(); ++i, ++offset) {
            update_one(b[i], gb[i], state.m[offset], state.v[offset], hyper, c);
        }
    }
}

}  // namespace elbokit
