// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "elbokit/adam.hpp"
#include "elbokit/dataset.hpp"
#include "elbokit/gaussian.hpp"
#include "elbokit/grad_check.hpp"
#include "elbokit/matrix.hpp"
#include "elbokit/mlp.hpp"
#include "elbokit/rng.hpp"

namespace elbokit {

/// Encoder maps data_dim -> 2J (mean head, then log-variance head).
/// Decoder maps J -> data_dim Bernoulli logits.
struct VaeModel {
    MlpParams encoder;
    MlpParams decoder;
    std::size_t latent_dim = 0;
    std::size_t data_dim = 0;

    void validate() const;

    friend bool operator==(const VaeModel&, const VaeModel&) = default;
};

struct LogVarClamp {
    double lo = -10.0;
    double hi = 10.0;
};

struct TrainConfig {
    std::size_t latent_dim = 2;
    std::size_t recon_samples = 1;
    std::size_t batch_size = 64;
    std::size_t epochs = 200;
    std::size_t hidden = 32;
    AdamHyper adam;
    std::uint64_t seed = 7;
    LogVarClamp logvar_clamp;

    void validate() const;

    friend bool operator==(const TrainConfig& a, const TrainConfig& b) {
        return a.latent_dim == b.latent_dim && a.recon_samples == b.recon_samples &&
               a.batch_size == b.batch_size && a.epochs == b.epochs && a.hidden == b.hidden &&
               a.adam.lr == b.adam.lr && a.adam.beta1 == b.adam.beta1 && a.adam.beta2 == b.adam.beta2 &&
               a.adam.epsilon == b.adam.epsilon && a.seed == b.seed && a.logvar_clamp.lo == b.logvar_clamp.lo &&
               a.logvar_clamp.hi == b.logvar_clamp.hi;
    }
};

/// Batch-mean loss and its split into minimization terms.
struct LossReport {
    double total_loss = 0.0;
    double kl_component = 0.0;
    double recon_component = 0.0;
    std::size_t epoch = 0;
    std::size_t batch = 0;
};

struct LossResult {
    LossReport report;
    std::vector<double> datum_kl;     // KL(q_i || N(0, I))
    std::vector<double> datum_recon;  // -(1/L) sum_l log p(x_i | z_il)
    Gradients encoder_grads;
    Gradients decoder_grads;
};

/// One standard-normal matrix (batch x J) per reconstruction sample.
using NoiseDraws = std::vector<Matrix>;

/// One tanh hidden layer in each network, identity heads.
VaeModel make_vae(std::size_t data_dim, std::size_t latent_dim, std::size_t hidden, RngState& rng);

/// q(z | x_i) for every row: mean head as-is, variance exp(clamp(logvar head)).
/// Throws NumericError (index = row) on non-finite encoder output.
std::vector<DiagonalGaussian> encode(const VaeModel& model, const Matrix& x, const LogVarClamp& clamp = {});

/// sum_d x_d l_d - softplus(l_d), i.e. the Bernoulli log-likelihood with
/// sigmoid(l) success probability, without forming log(1 - s).
double bernoulli_log_likelihood(std::span<const double> logits, std::span<const double> x);

/// Per-row log p(x_i | z_i). Throws DomainError if x leaves [0, 1].
std::vector<double> decode_log_likelihood(const VaeModel& model, const Matrix& z, const Matrix& x);

/// sigmoid(decoder(z)).
Matrix decode_probabilities(const VaeModel& model, const Matrix& z);

NoiseDraws draw_noise(std::size_t batch, std::size_t latent_dim, std::size_t samples, RngState& rng);

/// Batch-mean of KL(q_i || N(0, I)) - (1/L) sum_l log p(x_i | mu_i + sigma_i * eps_il)
/// with exact gradients for both networks; eps is held constant.
/// Throws NumericError (index = datum) if a per-datum loss is non-finite.
LossResult loss_with_noise(const VaeModel& model, const Matrix& x, const NoiseDraws& noise,
                           const LogVarClamp& clamp = {});

/// Same, with L fresh noise draws from rng.
LossResult loss(const VaeModel& model, const Matrix& x, std::size_t samples, RngState& rng,
                const LogVarClamp& clamp = {});

/// Worst relative error between the analytic gradient of loss_with_noise
/// and central differences over every encoder and decoder parameter.
double vae_grad_check(const VaeModel& model, const Matrix& x, const NoiseDraws& noise, double h,
                      const LogVarClamp& clamp = {});

struct TrainResult {
    VaeModel model;
    std::vector<LossReport> history;
    bool aborted = false;
    std::string abort_reason;
};

/// Epochs of shuffled minibatches, each followed by an Adam step on both
/// networks. The run stream RngState(config.seed) drives both the
/// Fisher-Yates shuffles and the reparameterization noise. A non-finite loss
/// stops training and returns the parameters from before the failing step.
TrainResult train(VaeModel model, const Dataset& dataset, const TrainConfig& config);

/// Mean loss over the whole dataset, processed in chunks of batch_size.
LossReport evaluate(const VaeModel& model, const Dataset& dataset, std::size_t samples,
                    std::size_t batch_size, RngState& rng, const LogVarClamp& clamp = {});

}  // namespace elbokit
