// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elbokit/error.hpp"

namespace elbokit {

std::vector<double> central_difference_gradient(std::span<const double> point, const FlatObjective& f,
                                                double h) {
    if (!(h >= 1e-7 && h <= 1e-3)) {
        throw DomainError("grad_check: step h must lie in [1e-7, 1e-3]");
    }
    std::vector<double> probe(point.begin(), point.end());
    std::vector<double> numeric(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double original = probe[i];
        probe[i] = original + h;
        const double up = f(probe);
        probe[i] = original - h;
        const double down = f(probe);
        probe[i] = original;
        if (!std::isfinite(up) || !std::isfinite(down)) {
            throw NumericError("grad_check: non-finite objective probing coordinate " + std::to_string(i), i);
        }
        numeric[i] = (up - down) / (2.0 * h);
    }
    return numeric;
}

double max_relative_error(std::span<const double> analytic, std::span<const double> numeric) {
    detail::require_same_size(analytic.size(), numeric.size(), "max_relative_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-8});
        worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / denom);
    }
    return worst;
}

double grad_check(std::span<const double> point, const FlatObjective& f, std::span<const double> analytic,
                  double h) {
    detail::require_same_size(point.size(), analytic.size(), "grad_check");
    const double base = f(point);
    if (!std::isfinite(base)) {
        throw NumericError("grad_check: non-finite objective at the base point");
    }
    const auto numeric = central_difference_gradient(point, f, h);
    return max_relative_error(analytic, numeric);
}

double grad_check(const MlpParams& params, const NetworkObjective& objective, double h) {
    const ValueAndGradient at_base = objective(params);
    if (!at_base.grads.congruent_with(params)) {
        throw DimensionError("grad_check: objective gradient is not shape-congruent with params");
    }
    const auto analytic = flatten(at_base.grads);
    const auto point = flatten(params);
    MlpParams scratch = params;
    const FlatObjective f = [&](std::span<const double> w) {
        unflatten_into(scratch, w);
        return objective(scratch).value;
    };
    return grad_check(point, f, analytic, h);
}

}  // namespace elbokit
