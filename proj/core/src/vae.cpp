// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/vae.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "elbokit/divergence.hpp"
#include "elbokit/error.hpp"

namespace elbokit {

namespace {

double softplus(double l) {
    return std::max(l, 0.0) + std::log1p(std::exp(-std::abs(l)));
}

double sigmoid(double l) {
    if (l >= 0.0) {
        return 1.0 / (1.0 + std::exp(-l));
    }
    const double e = std::exp(l);
    return e / (1.0 + e);
}

void check_unit_interval(const Matrix& x) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (double v : x.row(r)) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DomainError("VAE data row " + std::to_string(r) + " has a value outside [0, 1]");
            }
        }
    }
}

struct EncodedBatch {
    ForwardResult fwd;
    std::vector<DiagonalGaussian> q;
};

EncodedBatch run_encoder(const VaeModel& model, const Matrix& x, const LogVarClamp& clamp) {
    detail::require_same_size(x.cols(), model.data_dim, "encode input width");
    EncodedBatch out{forward(model.encoder, x), {}};
    const std::size_t latent = model.latent_dim;
    out.q.reserve(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto head = out.fwd.output.row(i);
        std::vector<double> mean(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(latent));
        std::vector<double> var(latent);
        for (std::size_t j = 0; j < latent; ++j) {
            const double raw = head[latent + j];
            if (!std::isfinite(raw) || !std::isfinite(mean[j])) {
                throw NumericError("encoder produced a non-finite output for datum " + std::to_string(i), i);
            }
            var[j] = std::exp(std::clamp(raw, clamp.lo, clamp.hi));
        }
        out.q.emplace_back(std::move(mean), std::move(var));
    }
    return out;
}

}  // namespace

void VaeModel::validate() const {
    encoder.validate();
    decoder.validate();
    if (latent_dim == 0 || data_dim == 0) {
        throw DimensionError("VaeModel: dimensions must be positive");
    }
    detail::require_same_size(encoder.input_dim(), data_dim, "VaeModel encoder input");
    detail::require_same_size(encoder.output_dim(), 2 * latent_dim, "VaeModel encoder output");
    detail::require_same_size(decoder.input_dim(), latent_dim, "VaeModel decoder input");
    detail::require_same_size(decoder.output_dim(), data_dim, "VaeModel decoder output");
}

void TrainConfig::validate() const {
    if (latent_dim < 1 || recon_samples < 1 || batch_size < 1 || epochs < 1 || hidden < 1) {
        throw DomainError("TrainConfig: latent_dim, recon_samples, batch_size, epochs and hidden must be >= 1");
    }
    if (!(adam.lr >= 0.0) || !(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) ||
        !(adam.epsilon > 0.0)) {
        throw DomainError("TrainConfig: invalid Adam hyperparameters");
    }
    if (!(logvar_clamp.lo < logvar_clamp.hi)) {
        throw DomainError("TrainConfig: log-variance clamp needs lo < hi");
    }
}

VaeModel make_vae(std::size_t data_dim, std::size_t latent_dim, std::size_t hidden, RngState& rng) {
    const std::size_t enc_widths[] = {data_dim, hidden, 2 * latent_dim};
    const std::size_t dec_widths[] = {latent_dim, hidden, data_dim};
    VaeModel model;
    model.encoder = make_mlp(enc_widths, Activation::Tanh, Activation::Identity, rng);
    model.decoder = make_mlp(dec_widths, Activation::Tanh, Activation::Identity, rng);
    model.latent_dim = latent_dim;
    model.data_dim = data_dim;
    model.validate();
    return model;
}

std::vector<DiagonalGaussian> encode(const VaeModel& model, const Matrix& x, const LogVarClamp& clamp) {
    check_unit_interval(x);
    return run_encoder(model, x, clamp).q;
}

double bernoulli_log_likelihood(std::span<const double> logits, std::span<const double> x) {
    detail::require_same_size(logits.size(), x.size(), "bernoulli_log_likelihood");
    double total = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        total += x[d] * logits[d] - softplus(logits[d]);
    }
    return total;
}

std::vector<double> decode_log_likelihood(const VaeModel& model, const Matrix& z, const Matrix& x) {
    detail::require_same_size(z.cols(), model.latent_dim, "decode z width");
    detail::require_same_size(x.cols(), model.data_dim, "decode x width");
    detail::require_same_size(z.rows(), x.rows(), "decode batch size");
    check_unit_interval(x);
    const auto fwd = forward(model.decoder, z);
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        out[i] = bernoulli_log_likelihood(fwd.output.row(i), x.row(i));
    }
    return out;
}

Matrix decode_probabilities(const VaeModel& model, const Matrix& z) {
    detail::require_same_size(z.cols(), model.latent_dim, "decode z width");
    Matrix probs = forward(model.decoder, z).output;
    for (double& v : probs.data()) v = sigmoid(v);
    return probs;
}

NoiseDraws draw_noise(std::size_t batch, std::size_t latent_dim, std::size_t samples, RngState& rng) {
    NoiseDraws noise;
    noise.reserve(samples);
    for (std::size_t l = 0; l < samples; ++l) {
        Matrix eps(batch, latent_dim);
        for (double& v : eps.data()) v = rng.normal();
        noise.push_back(std::move(eps));
    }
    return noise;
}

LossResult loss_with_noise(const VaeModel& model, const Matrix& x, const NoiseDraws& noise,
                           const LogVarClamp& clamp) {
    check_unit_interval(x);
    if (noise.empty()) {
        throw DomainError("loss: need at least one reconstruction sample");
    }
    const std::size_t batch = x.rows();
    const std::size_t latent = model.latent_dim;
    if (batch == 0) {
        throw DimensionError("loss: empty batch");
    }
    for (const auto& eps : noise) {
        if (eps.rows() != batch || eps.cols() != latent) {
            throw DimensionError("loss: noise must be batch x latent_dim per sample");
        }
    }

    const auto enc = run_encoder(model, x, clamp);
    const auto& head = enc.fwd.output;
    const double inv_batch = 1.0 / static_cast<double>(batch);
    const double inv_samples = 1.0 / static_cast<double>(noise.size());

    LossResult result;
    result.datum_kl.resize(batch);
    result.datum_recon.assign(batch, 0.0);
    result.decoder_grads = Gradients::zeros_like(model.decoder);

    // d loss / d (mean head) and d loss / d (clamped log-variance), KL part first.
    Matrix d_mean(batch, latent);
    Matrix d_logvar(batch, latent);
    std::vector<std::vector<double>> stddev(batch, std::vector<double>(latent));
    for (std::size_t i = 0; i < batch; ++i) {
        const auto& q = enc.q[i];
        result.datum_kl[i] = kl_vs_standard_normal(q);
        for (std::size_t j = 0; j < latent; ++j) {
            d_mean(i, j) = q.mean()[j] * inv_batch;
            d_logvar(i, j) = 0.5 * (q.variance()[j] - 1.0) * inv_batch;
            stddev[i][j] = std::sqrt(q.variance()[j]);
        }
    }

    for (const auto& eps : noise) {
        Matrix z(batch, latent);
        for (std::size_t i = 0; i < batch; ++i) {
            for (std::size_t j = 0; j < latent; ++j) {
                z(i, j) = enc.q[i].mean()[j] + stddev[i][j] * eps(i, j);
            }
        }
        const auto dec = forward(model.decoder, z);
        Matrix upstream(batch, model.data_dim);
        for (std::size_t i = 0; i < batch; ++i) {
            const auto logits = dec.output.row(i);
            const auto xi = x.row(i);
            result.datum_recon[i] -= bernoulli_log_likelihood(logits, xi) * inv_samples;
            for (std::size_t d = 0; d < model.data_dim; ++d) {
                upstream(i, d) = (sigmoid(logits[d]) - xi[d]) * inv_samples * inv_batch;
            }
        }
        auto back = backward(model.decoder, dec.tape, upstream);
        result.decoder_grads += back.grads;
        for (std::size_t i = 0; i < batch; ++i) {
            for (std::size_t j = 0; j < latent; ++j) {
                const double dz = back.input_grad(i, j);
                d_mean(i, j) += dz;
                // z = mu + exp(lv / 2) eps  =>  dz/dlv = sigma eps / 2
                d_logvar(i, j) += dz * eps(i, j) * stddev[i][j] * 0.5;
            }
        }
    }

    Matrix enc_upstream(batch, 2 * latent);
    for (std::size_t i = 0; i < batch; ++i) {
        for (std::size_t j = 0; j < latent; ++j) {
            enc_upstream(i, j) = d_mean(i, j);
            const double raw = head(i, latent + j);
            enc_upstream(i, latent + j) = (raw >= clamp.lo && raw <= clamp.hi) ? d_logvar(i, j) : 0.0;
        }
    }
    result.encoder_grads = backward(model.encoder, enc.fwd.tape, enc_upstream).grads;

    double kl_sum = 0.0;
    double recon_sum = 0.0;
    for (std::size_t i = 0; i < batch; ++i) {
        const double total = result.datum_kl[i] + result.datum_recon[i];
        if (!std::isfinite(total)) {
            throw NumericError("loss: non-finite loss for datum " + std::to_string(i), i);
        }
        kl_sum += result.datum_kl[i];
        recon_sum += result.datum_recon[i];
    }
    result.report.kl_component = kl_sum * inv_batch;
    result.report.recon_component = recon_sum * inv_batch;
    result.report.total_loss = result.report.kl_component + result.report.recon_component;
    return result;
}

LossResult loss(const VaeModel& model, const Matrix& x, std::size_t samples, RngState& rng,
                const LogVarClamp& clamp) {
    const auto noise = draw_noise(x.rows(), model.latent_dim, samples, rng);
    return loss_with_noise(model, x, noise, clamp);
}

double vae_grad_check(const VaeModel& model, const Matrix& x, const NoiseDraws& noise, double h,
                      const LogVarClamp& clamp) {
    const LossResult base = loss_with_noise(model, x, noise, clamp);
    std::vector<double> point = flatten(model.encoder);
    const std::size_t n_encoder = point.size();
    const auto dec_point = flatten(model.decoder);
    point.insert(point.end(), dec_point.begin(), dec_point.end());

    std::vector<double> analytic = flatten(base.encoder_grads);
    const auto dec_grad = flatten(base.decoder_grads);
    analytic.insert(analytic.end(), dec_grad.begin(), dec_grad.end());

    VaeModel scratch = model;
    const FlatObjective f = [&](std::span<const double> w) {
        unflatten_into(scratch.encoder, w.first(n_encoder));
        unflatten_into(scratch.decoder, w.subspan(n_encoder));
        return loss_with_noise(scratch, x, noise, clamp).report.total_loss;
    };
    return grad_check(point, f, analytic, h);
}

TrainResult train(VaeModel model, const Dataset& dataset, const TrainConfig& config) {
    config.validate();
    dataset.validate();
    model.validate();
    if (dataset.rows.empty()) {
        throw DomainError("train: dataset is empty");
    }
    detail::require_same_size(dataset.data_dim, model.data_dim, "train data width");
    detail::require_same_size(config.latent_dim, model.latent_dim, "train latent_dim");

    TrainResult result;
    RngState rng(config.seed);
    AdamState enc_state = AdamState::for_size(model.encoder.parameter_count());
    AdamState dec_state = AdamState::for_size(model.decoder.parameter_count());

    const std::size_t n = dataset.rows.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t n_batches = (n + config.batch_size - 1) / config.batch_size;
    result.history.reserve(config.epochs * n_batches);
    VaeModel last_good = model;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t i = n; i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
        }
        for (std::size_t b = 0; b < n_batches; ++b) {
            const std::size_t begin = b * config.batch_size;
            const std::size_t end = std::min(n, begin + config.batch_size);
            const Matrix xb = dataset.gather(std::span<const std::size_t>(order).subspan(begin, end - begin));
            LossResult step;
            try {
                step = loss(model, xb, config.recon_samples, rng, config.logvar_clamp);
            } catch (const NumericError& e) {
                result.aborted = true;
                result.abort_reason = "epoch " + std::to_string(epoch) + ", batch " + std::to_string(b) + ": " +
                                      e.what();
                result.model = std::move(last_good);
                return result;
            }
            last_good = model;
            step.report.epoch = epoch;
            step.report.batch = b;
            result.history.push_back(step.report);
            adam_step(model.encoder, step.encoder_grads, enc_state, config.adam);
            adam_step(model.decoder, step.decoder_grads, dec_state, config.adam);
        }
    }
    result.model = std::move(model);
    return result;
}

LossReport evaluate(const VaeModel& model, const Dataset& dataset, std::size_t samples, std::size_t batch_size,
                    RngState& rng, const LogVarClamp& clamp) {
    dataset.validate();
    if (dataset.rows.empty() || batch_size == 0) {
        throw DomainError("evaluate: need a nonempty dataset and batch_size >= 1");
    }
    const std::size_t n = dataset.rows.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    double kl = 0.0;
    double recon = 0.0;
    for (std::size_t begin = 0; begin < n; begin += batch_size) {
        const std::size_t end = std::min(n, begin + batch_size);
        const Matrix xb = dataset.gather(std::span<const std::size_t>(idx).subspan(begin, end - begin));
        const auto r = loss(model, xb, samples, rng, clamp);
        for (std::size_t i = 0; i < xb.rows(); ++i) {
            kl += r.datum_kl[i];
            recon += r.datum_recon[i];
        }
    }
    LossReport out;
    out.kl_component = kl / static_cast<double>(n);
    out.recon_component = recon / static_cast<double>(n);
    out.total_loss = out.kl_component + out.recon_component;
    return out;
}

}  // namespace elbokit
