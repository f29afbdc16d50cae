// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/mlp.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "elbokit/error.hpp"

namespace elbokit {

namespace {

double apply(Activation a, double v) {
    switch (a) {
        case Activation::Tanh:
            return std::tanh(v);
        case Activation::Identity:
            break;
    }
    return v;
}

// d act / d pre, written in terms of the activation output.
double derivative_from_output(Activation a, double y) {
    switch (a) {
        case Activation::Tanh:
            return 1.0 - y * y;
        case Activation::Identity:
            break;
    }
    return 1.0;
}

}  // namespace

const char* to_string(Activation a) noexcept {
    switch (a) {
        case Activation::Tanh:
            return "tanh";
        case Activation::Identity:
            break;
    }
    return "identity";
}

Activation activation_from_string(const char* name) {
    if (std::strcmp(name, "tanh") == 0) return Activation::Tanh;
    if (std::strcmp(name, "identity") == 0) return Activation::Identity;
    throw DomainError(std::string("unknown activation '") + name + "'");
}

std::size_t MlpParams::input_dim() const {
    if (layers.empty()) throw DimensionError("MlpParams: no layers");
    return layers.front().in();
}

std::size_t MlpParams::output_dim() const {
    if (layers.empty()) throw DimensionError("MlpParams: no layers");
    return layers.back().out();
}

std::size_t MlpParams::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const auto& layer : layers) {
        n += layer.weight.size() + layer.bias.size();
    }
    return n;
}

void MlpParams::validate() const {
    if (layers.empty()) throw DimensionError("MlpParams: no layers");
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& layer = layers[k];
        if (layer.in() == 0 || layer.out() == 0) {
            throw DimensionError("MlpParams: layer " + std::to_string(k) + " has a zero width");
        }
        detail::require_same_size(layer.bias.size(), layer.out(), "MlpParams bias");
        if (k > 0) {
            detail::require_same_size(layer.in(), layers[k - 1].out(), "MlpParams layer chain");
        }
        for (double w : layer.weight.data()) {
            if (!std::isfinite(w)) {
                throw NumericError("MlpParams: non-finite weight in layer " + std::to_string(k), k);
            }
        }
        for (double b : layer.bias) {
            if (!std::isfinite(b)) {
                throw NumericError("MlpParams: non-finite bias in layer " + std::to_string(k), k);
            }
        }
    }
}

Gradients Gradients::zeros_like(const MlpParams& params) {
    Gradients g;
    g.layers.reserve(params.layers.size());
    for (const auto& layer : params.layers) {
        g.layers.push_back({Matrix(layer.out(), layer.in()), std::vector<double>(layer.out(), 0.0)});
    }
    return g;
}

Gradients& Gradients::operator+=(const Gradients& other) {
    detail::require_same_size(layers.size(), other.layers.size(), "Gradients +=");
    for (std::size_t k = 0; k < layers.size(); ++k) {
        auto dst = layers[k].weight.data();
        const auto src = other.layers[k].weight.data();
        detail::require_same_size(dst.size(), src.size(), "Gradients += weight");
        detail::require_same_size(layers[k].bias.size(), other.layers[k].bias.size(), "Gradients += bias");
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        for (std::size_t i = 0; i < layers[k].bias.size(); ++i) layers[k].bias[i] += other.layers[k].bias[i];
    }
    return *this;
}

Gradients& Gradients::operator*=(double scale) {
    for (auto& layer : layers) {
        for (double& w : layer.weight.data()) w *= scale;
        for (double& b : layer.bias) b *= scale;
    }
    return *this;
}

bool Gradients::congruent_with(const MlpParams& params) const noexcept {
    if (layers.size() != params.layers.size()) return false;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (layers[k].weight.rows() != params.layers[k].out() ||
            layers[k].weight.cols() != params.layers[k].in() ||
            layers[k].bias.size() != params.layers[k].out()) {
            return false;
        }
    }
    return true;
}

ForwardResult forward(const MlpParams& params, const Matrix& x) {
    detail::require_same_size(x.cols(), params.input_dim(), "forward input width");
    ForwardTape tape;
    tape.input = x;
    tape.pre_activations.reserve(params.layers.size());
    tape.activations.reserve(params.layers.size());

    const Matrix* current = &tape.input;
    for (const auto& layer : params.layers) {
        detail::require_same_size(current->cols(), layer.in(), "forward layer width");
        const std::size_t batch = current->rows();
        Matrix pre(batch, layer.out());
        Matrix post(batch, layer.out());
        for (std::size_t n = 0; n < batch; ++n) {
            const auto in_row = current->row(n);
            for (std::size_t o = 0; o < layer.out(); ++o) {
                const auto w_row = layer.weight.row(o);
                double acc = layer.bias[o];
                for (std::size_t i = 0; i < layer.in(); ++i) {
                    acc += w_row[i] * in_row[i];
                }
                pre(n, o) = acc;
                post(n, o) = apply(layer.activation, acc);
            }
        }
        tape.pre_activations.push_back(std::move(pre));
        tape.activations.push_back(std::move(post));
        current = &tape.activations.back();
    }
    ForwardResult result{tape.activations.back(), std::move(tape)};
    return result;
}

Matrix replay_output(const MlpParams& params, const ForwardTape& tape) {
    if (tape.pre_activations.size() != params.layers.size() || params.layers.empty()) {
        throw DimensionError("replay_output: tape does not match params");
    }
    const Matrix& pre = tape.pre_activations.back();
    Matrix out(pre.rows(), pre.cols());
    const Activation act = params.layers.back().activation;
    for (std::size_t i = 0; i < pre.size(); ++i) {
        out.data()[i] = apply(act, pre.data()[i]);
    }
    return out;
}

BackwardResult backward(const MlpParams& params, const ForwardTape& tape, const Matrix& upstream) {
    const std::size_t n_layers = params.layers.size();
    if (tape.activations.size() != n_layers || tape.pre_activations.size() != n_layers || n_layers == 0) {
        throw DimensionError("backward: tape does not match params");
    }
    const Matrix& out = tape.output();
    if (upstream.rows() != out.rows() || upstream.cols() != out.cols()) {
        throw DimensionError("backward: upstream shape does not match forward output");
    }

    BackwardResult result{Gradients::zeros_like(params), Matrix()};
    Matrix delta_out = upstream;  // d objective / d activation of the current layer
    for (std::size_t kk = n_layers; kk-- > 0;) {
        const auto& layer = params.layers[kk];
        const Matrix& y = tape.activations[kk];
        const Matrix& x = kk == 0 ? tape.input : tape.activations[kk - 1];
        if (y.cols() != layer.out() || x.cols() != layer.in() || x.rows() != y.rows()) {
            throw DimensionError("backward: tape layer " + std::to_string(kk) + " has the wrong shape");
        }
        const std::size_t batch = y.rows();

        Matrix delta_pre(batch, layer.out());
        for (std::size_t i = 0; i < delta_pre.size(); ++i) {
            delta_pre.data()[i] = delta_out.data()[i] * derivative_from_output(layer.activation, y.data()[i]);
        }

        auto& g = result.grads.layers[kk];
        for (std::size_t n = 0; n < batch; ++n) {
            const auto x_row = x.row(n);
            const auto d_row = delta_pre.row(n);
            for (std::size_t o = 0; o < layer.out(); ++o) {
                const double d = d_row[o];
                g.bias[o] += d;
                auto gw = g.weight.row(o);
                for (std::size_t i = 0; i < layer.in(); ++i) {
                    gw[i] += d * x_row[i];
                }
            }
        }

        Matrix delta_in(batch, layer.in());
        for (std::size_t n = 0; n < batch; ++n) {
            const auto d_row = delta_pre.row(n);
            auto in_row = delta_in.row(n);
            for (std::size_t o = 0; o < layer.out(); ++o) {
                const auto w_row = layer.weight.row(o);
                const double d = d_row[o];
                for (std::size_t i = 0; i < layer.in(); ++i) {
                    in_row[i] += w_row[i] * d;
                }
            }
        }
        delta_out = std::move(delta_in);
    }
    result.input_grad = std::move(delta_out);
    return result;
}

MlpParams make_mlp(std::span<const std::size_t> widths, Activation hidden, Activation output,
                   RngState& rng) {
    if (widths.size() < 2) {
        throw DimensionError("make_mlp: need at least input and output widths");
    }
    MlpParams params;
    for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
        const std::size_t fan_in = widths[k];
        const std::size_t fan_out = widths[k + 1];
        if (fan_in == 0 || fan_out == 0) {
            throw DimensionError("make_mlp: zero width");
        }
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        DenseLayer layer{Matrix(fan_out, fan_in), std::vector<double>(fan_out, 0.0),
                         k + 2 == widths.size() ? output : hidden};
        for (double& w : layer.weight.data()) {
            w = rng.uniform(-limit, limit);
        }
        params.layers.push_back(std::move(layer));
    }
    return params;
}

std::vector<double> flatten(const MlpParams& params) {
    std::vector<double> out;
    out.reserve(params.parameter_count());
    for (const auto& layer : params.layers) {
        out.insert(out.end(), layer.weight.data().begin(), layer.weight.data().end());
        out.insert(out.end(), layer.bias.begin(), layer.bias.end());
    }
    return out;
}

std::vector<double> flatten(const Gradients& grads) {
    std::vector<double> out;
    for (const auto& layer : grads.layers) {
        out.insert(out.end(), layer.weight.data().begin(), layer.weight.data().end());
        out.insert(out.end(), layer.bias.begin(), layer.bias.end());
    }
    return out;
}

void unflatten_into(MlpParams& params, std::span<const double> values) {
    detail::require_same_size(values.size(), params.parameter_count(), "unflatten_into");
    std::size_t offset = 0;
    for (auto& layer : params.layers) {
        for (double& w : layer.weight.data()) w = values[offset++];
        for (double& b : layer.bias) b = values[offset++];
    }
}

}  // namespace elbokit
