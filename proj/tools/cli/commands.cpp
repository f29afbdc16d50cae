// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "elbokit/elbokit.hpp"
#include "manifest.hpp"

namespace elbokit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Stream id for model initialization, kept apart from the run stream.
constexpr std::uint64_t kInitStream = 0x9E3779B97F4A7C15ULL;

/// Thrown for flag values that parse but are invalid; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ELBO_KIT_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
    }
    return 0;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) s += ',';
        s += fields[i];
    }
    return s;
}

RunManifest start_manifest(const std::string& subcommand, std::uint64_t seed) {
    RunManifest m;
    m.subcommand = subcommand;
    m.seed = seed;
    m.version = kVersion;
    m.started_at = utc_timestamp();
    return m;
}

// ---------------------------------------------------------------- kl-check

struct KlCheckOptions {
    std::vector<double> mu_q;
    std::vector<double> var_q;
    std::vector<double> mu_p;
    std::vector<double> var_p;
    bool quadrature = true;
    std::size_t quad_points = 100001;
    std::size_t mc_samples = 100000;
    std::uint64_t seed = 0;
    double quad_tol = 1e-7;
    double mc_sigmas = 4.0;
};

void add_kl_check(CLI::App& app, KlCheckOptions& o) {
    app.add_option("--mu-q", o.mu_q, "Mean of q (comma separated per dimension)")->required()->delimiter(',');
    app.add_option("--var-q", o.var_q, "Variance of q (comma separated, > 0)")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app.add_option("--mu-p", o.mu_p, "Mean of p (default 0)")->delimiter(',');
    app.add_option("--var-p", o.var_p, "Variance of p (default 1)")->delimiter(',')->check(CLI::PositiveNumber);
    app.add_flag("--quadrature,!--no-quadrature", o.quadrature, "Include the Simpson quadrature oracle");
    app.add_option("--quad-points", o.quad_points, "Simpson grid points (odd, >= 1001)")->capture_default_str();
    app.add_option("--mc-samples", o.mc_samples, "Monte-Carlo sample count (0 disables, else >= 2)")
        ->capture_default_str();
    app.add_option("--seed", o.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
    app.add_option("--quad-tol", o.quad_tol, "Allowed |closed - quadrature|")->capture_default_str();
    app.add_option("--mc-sigmas", o.mc_sigmas, "Allowed Monte-Carlo deviation in standard errors")
        ->capture_default_str();
}

int cmd_kl_check(const KlCheckOptions& o, std::ostream& out, std::ostream& err) {
    if (o.mu_q.size() != o.var_q.size()) {
        throw UsageError("--mu-q and --var-q need the same number of entries");
    }
    const std::size_t dim = o.mu_q.size();
    const std::vector<double> mu_p = o.mu_p.empty() ? std::vector<double>(dim, 0.0) : o.mu_p;
    const std::vector<double> var_p = o.var_p.empty() ? std::vector<double>(dim, 1.0) : o.var_p;
    if (mu_p.size() != dim) throw UsageError("--mu-p must match the dimension of --mu-q");
    if (var_p.size() != dim) throw UsageError("--var-p must match the dimension of --mu-q");
    if (o.mc_samples == 1) throw UsageError("--mc-samples must be 0 or at least 2");
    if (o.quad_points < 1001 || o.quad_points % 2 == 0) throw UsageError("--quad-points must be odd and >= 1001");
    for (double m : o.mu_q) {
        if (!std::isfinite(m)) throw UsageError("--mu-q entries must be finite");
    }
    for (double m : mu_p) {
        if (!std::isfinite(m)) throw UsageError("--mu-p entries must be finite");
    }

    const DiagonalGaussian q(o.mu_q, o.var_q);
    const DiagonalGaussian p(mu_p, var_p);

    const double closed = kl_gaussian_closed(q, p);
    bool pass = true;

    std::string quad_field;
    if (o.quadrature) {
        // Diagonal Gaussians factorize, so the d-dimensional integral is the
        // sum of 1-D integrals.
        double quad = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const DiagonalGaussian qi({o.mu_q[i]}, {o.var_q[i]});
            const DiagonalGaussian pi({mu_p[i]}, {var_p[i]});
            quad += kl_quadrature_gaussian_1d(qi, pi, default_quadrature_spec(qi, pi, o.quad_points));
        }
        quad_field = format_double(quad);
        pass = pass && std::abs(quad - closed) <= o.quad_tol;
    }

    std::string mc_value;
    std::string mc_se;
    if (o.mc_samples > 0) {
        RngState rng(o.seed);
        const LogDensity log_q = [&q](std::span<const double> z) { return log_pdf(q, z); };
        const LogDensity log_p = [&p](std::span<const double> z) { return log_pdf(p, z); };
        const KlEstimate mc = kl_monte_carlo(q, log_q, log_p, o.mc_samples, rng);
        mc_value = format_double(mc.value);
        mc_se = format_double(mc.std_error);
        pass = pass && std::abs(mc.value - closed) <= o.mc_sigmas * mc.std_error + 1e-12;
    }

    out << "closed_form,quadrature,mc_value,mc_std_error,mc_samples,pass\n";
    out << csv_join({format_double(closed), quad_field, mc_value, mc_se, std::to_string(o.mc_samples),
                     pass ? "1" : "0"})
        << "\n";
    err << "kl-check: KL(q||p) closed form " << closed << (pass ? " (all routes agree)" : " (ROUTES DISAGREE)")
        << "\n";
    return pass ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------- bound-check

struct BoundCheckOptions {
    std::size_t trials = 100;
    std::size_t latent_dim = 2;
    std::size_t data_dim = 4;
    std::size_t recon_samples = 10000;
    std::uint64_t seed = 0;
    std::string q_mode = "random";
    double sigmas = 4.0;
    std::string out_path;
};

void add_bound_check(CLI::App& app, BoundCheckOptions& o) {
    app.add_option("--trials", o.trials, "Number of random linear-Gaussian models")->capture_default_str();
    app.add_option("--latent-dim", o.latent_dim, "Latent dimension J (1..16)")->capture_default_str();
    app.add_option("--data-dim", o.data_dim, "Data dimension D (1..16)")->capture_default_str();
    app.add_option("--recon-samples", o.recon_samples, "Reconstruction samples L per trial")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
    app.add_option("--q-mode", o.q_mode, "random: random diagonal q; posterior: diagonal of the exact posterior")
        ->check(CLI::IsMember({"random", "posterior"}))
        ->capture_default_str();
    app.add_option("--sigmas", o.sigmas, "Violation threshold in standard errors")->capture_default_str();
    app.add_option("--out", o.out_path, "Write the metrics CSV here instead of standard output");
}

int cmd_bound_check(const BoundCheckOptions& o, std::ostream& out, std::ostream& err) {
    if (o.trials < 1) throw UsageError("--trials must be >= 1");
    if (o.latent_dim < 1 || o.latent_dim > LinearGaussianModel::kMaxDim) {
        throw UsageError("--latent-dim must be in 1..16");
    }
    if (o.data_dim < 1 || o.data_dim > LinearGaussianModel::kMaxDim) {
        throw UsageError("--data-dim must be in 1..16");
    }
    if (o.recon_samples < 1) throw UsageError("--recon-samples must be >= 1");
    if (!(o.sigmas > 0.0)) throw UsageError("--sigmas must be positive");

    RunManifest manifest = start_manifest("bound-check", o.seed);
    manifest.config = {{"trials", o.trials},   {"latent_dim", o.latent_dim}, {"data_dim", o.data_dim},
                       {"recon_samples", o.recon_samples}, {"q_mode", o.q_mode}, {"sigmas", o.sigmas}};

    const bool posterior_mode = o.q_mode == "posterior";
    // Only a 1-D posterior is guaranteed diagonal, so only then must the gap vanish.
    const bool expect_tight = posterior_mode && o.latent_dim == 1;

    std::string body = "trial,exact_log_marginal,elbo,gap,std_error,ok\n";
    std::size_t violations = 0;
    const RngState root(o.seed);
    for (std::size_t t = 0; t < o.trials; ++t) {
        RngState rng = root.split(t + 1);
        const auto model = random_linear_gaussian(o.latent_dim, o.data_dim, rng);
        const auto x = sample_data(model, rng);
        DiagonalGaussian q = DiagonalGaussian::standard(o.latent_dim);
        if (posterior_mode) {
            q = exact_posterior(model, x).diagonal();
        } else {
            std::vector<double> mean(o.latent_dim);
            std::vector<double> var(o.latent_dim);
            for (auto& m : mean) m = rng.normal();
            for (auto& v : var) v = rng.uniform(0.1, 2.0);
            q = DiagonalGaussian(std::move(mean), std::move(var));
        }
        const BoundGap g = bound_gap(model, x, q, o.recon_samples, rng);
        const double slack = o.sigmas * g.std_error;
        bool ok = g.gap >= -slack;
        if (expect_tight) ok = ok && std::abs(g.gap) <= slack;
        if (!ok) ++violations;
        body += csv_join({std::to_string(t), format_double(g.log_marginal), format_double(g.elbo.elbo),
                          format_double(g.gap), format_double(g.std_error), ok ? "1" : "0"}) +
                "\n";
    }
    manifest.finished_at = utc_timestamp();
    const std::string text = manifest.comment_header() + body;
    if (o.out_path.empty()) {
        out << text;
    } else {
        write_file_atomic(o.out_path, text);
    }
    err << "bound-check: " << o.trials << " trials, " << violations << " violation(s) beyond " << o.sigmas
        << " standard errors\n";
    return violations == 0 ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------------- grad-check

struct GradCheckOptions {
    std::size_t latent_dim = 2;
    std::size_t data_dim = 4;
    std::size_t hidden = 8;
    std::size_t batch = 3;
    std::size_t recon_samples = 1;
    double step = 1e-5;
    double tolerance = 1e-4;
    std::uint64_t seed = 0;
};

void add_grad_check(CLI::App& app, GradCheckOptions& o) {
    app.add_option("--latent-dim", o.latent_dim, "Latent dimension J")->capture_default_str();
    app.add_option("--data-dim", o.data_dim, "Data dimension")->capture_default_str();
    app.add_option("--hidden", o.hidden, "Hidden units per network")->capture_default_str();
    app.add_option("--batch", o.batch, "Data rows in the checked batch")->capture_default_str();
    app.add_option("--recon-samples", o.recon_samples, "Frozen noise draws per datum")->capture_default_str();
    app.add_option("--step", o.step, "Central-difference step h in [1e-7, 1e-3]")->capture_default_str();
    app.add_option("--tolerance", o.tolerance, "Maximum allowed relative error")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
}

int cmd_grad_check(const GradCheckOptions& o, std::ostream& out, std::ostream& err) {
    if (o.latent_dim < 1 || o.data_dim < 1 || o.hidden < 1 || o.batch < 1 || o.recon_samples < 1) {
        throw UsageError("--latent-dim, --data-dim, --hidden, --batch and --recon-samples must be >= 1");
    }
    if (!(o.step >= 1e-7 && o.step <= 1e-3)) throw UsageError("--step must lie in [1e-7, 1e-3]");

    RngState init = RngState(o.seed).split(kInitStream);
    const VaeModel model = make_vae(o.data_dim, o.latent_dim, o.hidden, init);
    RngState rng(o.seed);
    Matrix x(o.batch, o.data_dim);
    for (double& v : x.data()) v = rng.uniform() < 0.5 ? 0.0 : 1.0;
    const NoiseDraws noise = draw_noise(o.batch, o.latent_dim, o.recon_samples, rng);

    const double worst = vae_grad_check(model, x, noise, o.step);
    const bool pass = worst <= o.tolerance;
    const std::size_t n_params = model.encoder.parameter_count() + model.decoder.parameter_count();
    out << "parameters,max_relative_error,tolerance,pass\n";
    out << csv_join({std::to_string(n_params), format_double(worst), format_double(o.tolerance), pass ? "1" : "0"})
        << "\n";
    err << "grad-check: max relative error " << worst << " over " << n_params << " parameters\n";
    return pass ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- train

struct TrainOptions {
    std::string dataset;
    std::string out_dir;
    TrainConfig config;
};

void add_train(CLI::App& app, TrainOptions& o) {
    auto& c = o.config;
    app.add_option("--dataset", o.dataset, "Dataset CSV")->required();
    app.add_option("--out", o.out_dir, "Output directory")->required();
    app.add_option("--latent-dim", c.latent_dim, "Latent dimension J")->capture_default_str();
    app.add_option("--recon-samples", c.recon_samples, "Reconstruction samples L")->capture_default_str();
    app.add_option("--epochs", c.epochs, "Training epochs")->capture_default_str();
    app.add_option("--batch-size", c.batch_size, "Minibatch size")->capture_default_str();
    app.add_option("--hidden", c.hidden, "Hidden tanh units per network")->capture_default_str();
    app.add_option("--lr", c.adam.lr, "Adam learning rate")->capture_default_str();
    app.add_option("--beta1", c.adam.beta1, "Adam beta1")->capture_default_str();
    app.add_option("--beta2", c.adam.beta2, "Adam beta2")->capture_default_str();
    app.add_option("--logvar-min", c.logvar_clamp.lo, "Lower log-variance clamp")->capture_default_str();
    app.add_option("--logvar-max", c.logvar_clamp.hi, "Upper log-variance clamp")->capture_default_str();
    app.add_option("--seed", c.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
}

json config_json(const TrainConfig& c) {
    return {{"latent_dim", c.latent_dim}, {"recon_samples", c.recon_samples}, {"epochs", c.epochs},
            {"batch_size", c.batch_size}, {"hidden", c.hidden},               {"lr", c.adam.lr},
            {"beta1", c.adam.beta1},      {"beta2", c.adam.beta2},            {"adam_epsilon", c.adam.epsilon},
            {"logvar_min", c.logvar_clamp.lo}, {"logvar_max", c.logvar_clamp.hi}};
}

int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
    try {
        o.config.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const Dataset data = load_dataset(o.dataset);
    if (data.rows.empty()) throw UsageError("--dataset has no rows");

    RunManifest manifest = start_manifest("train", o.config.seed);
    manifest.config = config_json(o.config);
    manifest.config["dataset"] = o.dataset;
    manifest.config["dataset_name"] = data.name;
    manifest.config["dataset_rows"] = data.rows.size();

    RngState init = RngState(o.config.seed).split(kInitStream);
    VaeModel model = make_vae(data.data_dim, o.config.latent_dim, o.config.hidden, init);
    const TrainResult result = train(std::move(model), data, o.config);
    manifest.finished_at = utc_timestamp();

    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    std::string metrics = manifest.comment_header() + "epoch,batch,total_loss,kl,recon\n";
    for (const auto& r : result.history) {
        metrics += csv_join({std::to_string(r.epoch), std::to_string(r.batch), format_double(r.total_loss),
                             format_double(r.kl_component), format_double(r.recon_component)}) +
                   "\n";
    }
    write_file_atomic(dir / "metrics.csv", metrics);
    save_checkpoint(dir / "checkpoint.json", {result.model, o.config});
    json m = manifest.to_json();
    m["aborted"] = result.aborted;
    m["abort_reason"] = result.abort_reason;
    write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");

    if (result.aborted) {
        err << "train: aborted (" << result.abort_reason << "); last good parameters saved\n";
        return kExitCheckFailed;
    }
    if (!result.history.empty()) {
        auto epoch_mean = [&](std::size_t epoch) {
            double s = 0.0;
            std::size_t n = 0;
            for (const auto& r : result.history) {
                if (r.epoch == epoch) {
                    s += r.total_loss;
                    ++n;
                }
            }
            return n ? s / static_cast<double>(n) : 0.0;
        };
        err << "train: epoch 0 mean loss " << epoch_mean(0) << ", epoch " << (o.config.epochs - 1)
            << " mean loss " << epoch_mean(o.config.epochs - 1) << "\n";
    }
    out << (dir / "checkpoint.json").string() << "\n";
    return kExitOk;
}

// -------------------------------------------------------------------- eval

struct EvalOptions {
    std::string checkpoint;
    std::string dataset;
    std::size_t recon_samples = 1;
    std::size_t batch_size = 256;
    std::uint64_t seed = 0;
};

void add_eval(CLI::App& app, EvalOptions& o) {
    app.add_option("--checkpoint", o.checkpoint, "Checkpoint JSON")->required();
    app.add_option("--dataset", o.dataset, "Dataset CSV")->required();
    app.add_option("--recon-samples", o.recon_samples, "Reconstruction samples L")->capture_default_str();
    app.add_option("--batch-size", o.batch_size, "Evaluation chunk size")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
    if (o.recon_samples < 1 || o.batch_size < 1) throw UsageError("--recon-samples and --batch-size must be >= 1");
    const Checkpoint ckpt = load_checkpoint(o.checkpoint);
    const Dataset data = load_dataset(o.dataset);
    if (data.rows.empty()) throw UsageError("--dataset has no rows");
    if (data.data_dim != ckpt.model.data_dim) throw UsageError("--dataset width does not match the checkpoint");
    RngState rng(o.seed);
    const LossReport r = evaluate(ckpt.model, data, o.recon_samples, o.batch_size, rng, ckpt.config.logvar_clamp);
    out << "n,total_loss,kl,recon\n";
    out << csv_join({std::to_string(data.rows.size()), format_double(r.total_loss), format_double(r.kl_component),
                     format_double(r.recon_component)})
        << "\n";
    err << "eval: mean loss " << r.total_loss << " (kl " << r.kl_component << ", recon " << r.recon_component
        << ")\n";
    return kExitOk;
}

// ------------------------------------------------------------------ sample

struct SampleOptions {
    std::string checkpoint;
    std::size_t count = 16;
    std::uint64_t seed = 0;
    std::string out_path;
};

void add_sample(CLI::App& app, SampleOptions& o) {
    app.add_option("--checkpoint", o.checkpoint, "Checkpoint JSON")->required();
    app.add_option("--count", o.count, "Number of decoded samples")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
    app.add_option("--out", o.out_path, "Output dataset CSV")->required();
}

int cmd_sample(const SampleOptions& o, std::ostream& out, std::ostream& err) {
    const Checkpoint ckpt = load_checkpoint(o.checkpoint);
    RngState rng(o.seed);
    Matrix z(o.count, ckpt.model.latent_dim);
    for (double& v : z.data()) v = rng.normal();
    const Matrix probs = decode_probabilities(ckpt.model, z);
    Dataset d{"samples", o.seed, ckpt.model.data_dim, {}};
    for (std::size_t i = 0; i < probs.rows(); ++i) {
        d.rows.emplace_back(probs.row(i).begin(), probs.row(i).end());
    }
    save_dataset(o.out_path, d);
    err << "sample: wrote " << o.count << " decoded rows\n";
    out << o.out_path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- gen-data

struct GenDataOptions {
    std::string kind = "bars";
    std::size_t n = 512;
    std::size_t side = 4;
    std::vector<double> centers = {-3.0, 0.0, 3.0, 0.0};
    double spread = 1.0;
    std::uint64_t seed = 0;
    std::string out_path;
};

void add_gen_data(CLI::App& app, GenDataOptions& o) {
    app.add_option("--kind", o.kind, "bars or blobs")->check(CLI::IsMember({"bars", "blobs"}))->capture_default_str();
    app.add_option("--n", o.n, "Number of rows")->capture_default_str();
    app.add_option("--side", o.side, "Bar image side length (bars)")->capture_default_str();
    app.add_option("--centers", o.centers, "Flat x1,y1,x2,y2,... list of blob centers (blobs)")->delimiter(',');
    app.add_option("--spread", o.spread, "Blob standard deviation (blobs)")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed (default: $ELBO_KIT_SEED or 0)");
    app.add_option("--out", o.out_path, "Output dataset CSV")->required();
}

int cmd_gen_data(const GenDataOptions& o, std::ostream& out, std::ostream& err) {
    RngState rng(o.seed);
    Dataset d;
    if (o.kind == "bars") {
        if (o.side < 2) throw UsageError("--side must be at least 2");
        d = gen_bars(o.n, o.side, rng);
    } else {
        if (o.centers.empty() || o.centers.size() % 2 != 0) {
            throw UsageError("--centers needs an even, nonzero number of coordinates");
        }
        if (!(o.spread > 0.0)) throw UsageError("--spread must be positive");
        std::vector<std::array<double, 2>> centers;
        for (std::size_t i = 0; i < o.centers.size(); i += 2) centers.push_back({o.centers[i], o.centers[i + 1]});
        d = gen_gaussian_blobs(o.n, centers, o.spread, rng);
    }
    save_dataset(o.out_path, d);
    err << "gen-data: wrote " << d.rows.size() << " rows of width " << d.data_dim << "\n";
    out << o.out_path << "\n";
    return kExitOk;
}

}  // namespace

std::string strip_timestamps(const std::string& metrics_text) {
    std::istringstream in(metrics_text);
    std::string line;
    std::string kept;
    while (std::getline(in, line)) {
        if (line.rfind("# started_at=", 0) == 0 || line.rfind("# finished_at=", 0) == 0) continue;
        kept += line;
        kept += '\n';
    }
    return kept;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"elbo-kit: variational inference verification and VAE training"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    const std::uint64_t seed = default_seed();
    KlCheckOptions kl;
    kl.seed = seed;
    BoundCheckOptions bound;
    bound.seed = seed;
    GradCheckOptions grad;
    grad.seed = seed;
    TrainOptions tr;
    tr.config.seed = seed;
    EvalOptions ev;
    ev.seed = seed;
    SampleOptions sm;
    sm.seed = seed;
    GenDataOptions gd;
    gd.seed = seed;

    auto* kl_cmd = app.add_subcommand("kl-check", "Compare closed-form, quadrature and Monte-Carlo KL");
    add_kl_check(*kl_cmd, kl);
    auto* bound_cmd = app.add_subcommand("bound-check", "Check log p(x) >= ELBO on random linear-Gaussian models");
    add_bound_check(*bound_cmd, bound);
    auto* grad_cmd = app.add_subcommand("grad-check", "Finite-difference check of the VAE loss gradient");
    add_grad_check(*grad_cmd, grad);
    auto* train_cmd = app.add_subcommand("train", "Train a VAE on a dataset CSV");
    add_train(*train_cmd, tr);
    auto* eval_cmd = app.add_subcommand("eval", "Mean loss of a checkpoint on a dataset");
    add_eval(*eval_cmd, ev);
    auto* sample_cmd = app.add_subcommand("sample", "Decode prior draws into a dataset CSV");
    add_sample(*sample_cmd, sm);
    auto* gen_cmd = app.add_subcommand("gen-data", "Write a synthetic dataset CSV");
    add_gen_data(*gen_cmd, gd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (kl_cmd->parsed()) return cmd_kl_check(kl, out, err);
        if (bound_cmd->parsed()) return cmd_bound_check(bound, out, err);
        if (grad_cmd->parsed()) return cmd_grad_check(grad, out, err);
        if (train_cmd->parsed()) return cmd_train(tr, out, err);
        if (eval_cmd->parsed()) return cmd_eval(ev, out, err);
        if (sample_cmd->parsed()) return cmd_sample(sm, out, err);
        if (gen_cmd->parsed()) return cmd_gen_data(gd, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace elbokit::cli
