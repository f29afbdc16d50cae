// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "elbokit/mlp.hpp"

namespace elbokit {

/// An objective evaluated together with its analytic gradient.
struct ValueAndGradient {
    double value = 0.0;
    Gradients grads;
};

using FlatObjective = std::function<double(std::span<const double>)>;
using NetworkObjective = std::function<ValueAndGradient(const MlpParams&)>;

/// (f(w + h e_i) - f(w - h e_i)) / 2h for every coordinate i.
/// Throws DomainError unless h is in [1e-7, 1e-3]; NumericError (index = i)
/// if f is non-finite at a probe.
std::vector<double> central_difference_gradient(std::span<const double> point, const FlatObjective& f,
                                                double h);

/// max_i |a_i - n_i| / max(|a_i|, |n_i|, 1e-8).
double max_relative_error(std::span<const double> analytic, std::span<const double> numeric);

/// Compares `analytic` against central differences of f at `point`.
double grad_check(std::span<const double> point, const FlatObjective& f, std::span<const double> analytic,
                  double h);

/// Network form: the objective supplies its own analytic gradient at params.
double grad_check(const MlpParams& params, const NetworkObjective& objective, double h);

}  // namespace elbokit
