// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "elbokit/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "elbokit/error.hpp"

namespace elbokit {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "elbo-kit-checkpoint";
constexpr int kVersion = 1;

json network_to_json(const MlpParams& params) {
    json layers = json::array();
    for (const auto& layer : params.layers) {
        layers.push_back({{"in", layer.in()},
                          {"out", layer.out()},
                          {"activation", to_string(layer.activation)},
                          {"weight", std::vector<double>(layer.weight.data().begin(), layer.weight.data().end())},
                          {"bias", layer.bias}});
    }
    return {{"layers", layers}};
}

MlpParams network_from_json(const json& j) {
    MlpParams params;
    for (const auto& jl : j.at("layers")) {
        const auto in = jl.at("in").get<std::size_t>();
        const auto out = jl.at("out").get<std::size_t>();
        auto weight = jl.at("weight").get<std::vector<double>>();
        if (weight.size() != in * out) {
            throw FormatError("checkpoint: weight array does not match declared layer shape");
        }
        params.layers.push_back({Matrix(out, in, std::move(weight)), jl.at("bias").get<std::vector<double>>(),
                                 activation_from_string(jl.at("activation").get<std::string>().c_str())});
    }
    params.validate();
    return params;
}

json config_to_json(const TrainConfig& c) {
    return {{"latent_dim", c.latent_dim},
            {"recon_samples", c.recon_samples},
            {"batch_size", c.batch_size},
            {"epochs", c.epochs},
            {"hidden", c.hidden},
            {"lr", c.adam.lr},
            {"beta1", c.adam.beta1},
            {"beta2", c.adam.beta2},
            {"adam_epsilon", c.adam.epsilon},
            {"seed", c.seed},
            {"logvar_min", c.logvar_clamp.lo},
            {"logvar_max", c.logvar_clamp.hi}};
}

TrainConfig config_from_json(const json& j) {
    TrainConfig c;
    c.latent_dim = j.at("latent_dim").get<std::size_t>();
    c.recon_samples = j.at("recon_samples").get<std::size_t>();
    c.batch_size = j.at("batch_size").get<std::size_t>();
    c.epochs = j.at("epochs").get<std::size_t>();
    c.hidden = j.at("hidden").get<std::size_t>();
    c.adam.lr = j.at("lr").get<double>();
    c.adam.beta1 = j.at("beta1").get<double>();
    c.adam.beta2 = j.at("beta2").get<double>();
    c.adam.epsilon = j.at("adam_epsilon").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.logvar_clamp.lo = j.at("logvar_min").get<double>();
    c.logvar_clamp.hi = j.at("logvar_max").get<double>();
    return c;
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& checkpoint) {
    checkpoint.model.validate();
    const json doc = {{"format", kFormat},
                      {"version", kVersion},
                      {"config", config_to_json(checkpoint.config)},
                      {"latent_dim", checkpoint.model.latent_dim},
                      {"data_dim", checkpoint.model.data_dim},
                      {"encoder", network_to_json(checkpoint.model.encoder)},
                      {"decoder", network_to_json(checkpoint.model.decoder)}};
    return doc.dump(1) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != kFormat || doc.at("version").get<int>() != kVersion) {
            throw FormatError("checkpoint: unsupported format or version");
        }
        Checkpoint out;
        out.config = config_from_json(doc.at("config"));
        out.model.latent_dim = doc.at("latent_dim").get<std::size_t>();
        out.model.data_dim = doc.at("data_dim").get<std::size_t>();
        out.model.encoder = network_from_json(doc.at("encoder"));
        out.model.decoder = network_from_json(doc.at("decoder"));
        out.model.validate();
        return out;
    } catch (const json::exception& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
    write_file_atomic(path, checkpoint_to_json(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open checkpoint " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return checkpoint_from_json(buf.str());
}

}  // namespace elbokit
