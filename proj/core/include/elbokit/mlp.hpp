// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elbokit/matrix.hpp"
#include "elbokit/rng.hpp"

namespace elbokit {

enum class Activation { Identity, Tanh };

const char* to_string(Activation a) noexcept;
Activation activation_from_string(const char* name);

/// y = act(W x + b), W is out x in.
struct DenseLayer {
    Matrix weight;
    std::vector<double> bias;
    Activation activation = Activation::Identity;

    std::size_t in() const noexcept { return weight.cols(); }
    std::size_t out() const noexcept { return weight.rows(); }

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Feed-forward stack of dense layers. Consecutive widths must chain and
/// every entry must be finite; `validate()` throws otherwise.
struct MlpParams {
    std::vector<DenseLayer> layers;

    std::size_t input_dim() const;
    std::size_t output_dim() const;
    std::size_t parameter_count() const noexcept;
    void validate() const;

    friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

/// Per-parameter partials, shape-congruent with an MlpParams.
struct LayerGradient {
    Matrix weight;
    std::vector<double> bias;

    friend bool operator==(const LayerGradient&, const LayerGradient&) = default;
};

struct Gradients {
    std::vector<LayerGradient> layers;

    static Gradients zeros_like(const MlpParams& params);

    Gradients& operator+=(const Gradients& other);
    Gradients& operator*=(double scale);

    bool congruent_with(const MlpParams& params) const noexcept;

    friend bool operator==(const Gradients&, const Gradients&) = default;
};

/// Intermediates of one forward pass over a batch.
struct ForwardTape {
    Matrix input;
    std::vector<Matrix> pre_activations;  // W x + b per layer
    std::vector<Matrix> activations;      // act(pre) per layer; back() is the output

    const Matrix& output() const { return activations.back(); }
};

struct ForwardResult {
    Matrix output;
    ForwardTape tape;
};

struct BackwardResult {
    Gradients grads;
    Matrix input_grad;
};

/// Batched forward pass; x is batch x input_dim. Throws DimensionError on
/// a width mismatch.
ForwardResult forward(const MlpParams& params, const Matrix& x);

/// Rebuilds the network output from the tape's last pre-activation.
Matrix replay_output(const MlpParams& params, const ForwardTape& tape);

/// Reverse-mode derivatives of sum(upstream .* output) with respect to every
/// weight, bias and input entry.
BackwardResult backward(const MlpParams& params, const ForwardTape& tape, const Matrix& upstream);

/// Widths {in, h1, ..., out}; hidden layers use `hidden`, the last layer
/// uses `output`. Weights are uniform in +/- sqrt(6 / (fan_in + fan_out)),
/// biases zero.
MlpParams make_mlp(std::span<const std::size_t> widths, Activation hidden, Activation output,
                   RngState& rng);

/// All weights (row-major) then bias, layer by layer.
std::vector<double> flatten(const MlpParams& params);
std::vector<double> flatten(const Gradients& grads);

/// Inverse of flatten into an existing shape.
void unflatten_into(MlpParams& params, std::span<const double> values);

}  // namespace elbokit
