// Command-line driver: train the wiretap autoencoder, evaluate error-rate
// sweeps, print secrecy capacities and export plot-ready CSV artifacts.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiretap/checkpoint.hpp"
#include "wiretap/csv.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/eval.hpp"
#include "wiretap/training.hpp"

namespace fs = std::filesystem;
using namespace wiretap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

int cmd_train(const std::string& config_path, std::optional<std::uint64_t> seed_override,
              const std::string& out_override, bool diagnostic_naive) {
    RunConfig config = load_run_config(config_path);
    if (seed_override) {
        config.seed = *seed_override;
        config.seed_set = true;
    }
    if (!out_override.empty()) config.output_dir = out_override;
    validate_run_config(config);

    const std::string hash = config_hash(config);
    ensure_dir(config.output_dir);
    const fs::path out(config.output_dir);

    if (diagnostic_naive) {
        // Demonstration of the unstable difference loss; trains phases 1-2
        // first so Eve is a meaningful frozen adversary.
        RngStream master(config.seed);
        RngStream init_rng = master.split(0);
        RngStream phase1_rng = master.split(1);
        RngStream phase2_rng = master.split(2);
        RngStream naive_rng = master.split(6);

        ModelConfig mc{config.message_count, config.codeword_dim, config.normalization};
        Trainer trainer(make_wiretap_model(mc, init_rng));
        auto trace = trainer.run_phase(make_phase_config(1, config.phase1_steps, config.alpha,
                                                         config.bob_train_snr_db,
                                                         config.eve_extra_train_snr_db),
                                       config.schedule, phase1_rng);
        auto t2 = trainer.run_phase(make_phase_config(2, config.phase2_steps, config.alpha,
                                                      config.bob_train_snr_db,
                                                      config.eve_extra_train_snr_db),
                                    config.schedule, phase2_rng);
        trace.insert(trace.end(), t2.begin(), t2.end());
        auto naive = trainer.run_naive_diagnostic(config.phase3_steps, config.schedule,
                                                  config.bob_train_snr_db,
                                                  config.eve_extra_train_snr_db, naive_rng);
        trace.insert(trace.end(), naive.begin(), naive.end());
        write_trace_csv((out / "naive_loss_trace.csv").string(), trace, hash, config.seed);
        std::cout << "diagnostic run complete; final naive loss " << naive.back().loss << "\n";
        std::cout << "wrote " << (out / "naive_loss_trace.csv").string() << "\n";
        return kExitOk;
    }

    PipelineResult result = run_full_pipeline(pipeline_options(config));

    Checkpoint ck;
    ck.config = config;
    ck.seed = config.seed;
    ck.pre_security = result.pre_security_model;
    ck.final_model = result.final_model;
    ck.clusters = result.clusters;
    save_checkpoint(ck, (out / "checkpoint.json").string());

    write_trace_csv((out / "loss_trace.csv").string(), result.trace, hash, config.seed);
    write_codebook_csv((out / "constellation_phase1.csv").string(), result.phase1_codebook, hash,
                       config.seed);
    write_codebook_csv((out / "constellation_final.csv").string(), result.final_codebook, hash,
                       config.seed);
    write_cluster_csv((out / "clusters.csv").string(), result.clusters, hash, config.seed);

    std::cout << "training complete (config hash " << hash << ", seed " << config.seed << ")\n";
    std::cout << "wrote checkpoint.json, loss_trace.csv, constellation_phase1.csv, "
                 "constellation_final.csv, clusters.csv under "
              << config.output_dir << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::string& checkpoint_path, std::optional<double> snr_start,
                 std::optional<double> snr_stop, std::optional<double> snr_step,
                 std::optional<double> eve_extra_db, std::optional<long> samples,
                 std::optional<std::uint64_t> seed_opt, const std::string& out_override) {
    Checkpoint ck = load_checkpoint(checkpoint_path);
    EvalSettings eval = ck.config.eval;
    if (snr_start) eval.snr_start_db = *snr_start;
    if (snr_stop) eval.snr_stop_db = *snr_stop;
    if (snr_step) eval.snr_step_db = *snr_step;
    if (eve_extra_db) eval.eve_extra_snr_db = *eve_extra_db;
    if (samples) eval.samples_per_point = *samples;
    if (eval.samples_per_point < 1000) throw ParamError("samples: must be at least 1000");

    const std::vector<double> grid = eval.snr_grid();
    if (grid.empty()) throw ParamError("eval: empty SNR grid");

    const std::uint64_t seed = seed_opt ? *seed_opt : splitmix64(ck.seed ^ 0xE7A1u);
    const std::string out_dir = out_override.empty() ? ck.config.output_dir : out_override;
    ensure_dir(out_dir);
    const fs::path out(out_dir);
    const std::string hash = ck.hash();

    RngStream rng(seed);
    RngStream before_rng = rng.split(1);
    RngStream after_rng = rng.split(2);
    RngStream leak_rng = rng.split(3);

    const CosetCode code = make_coset_code(ck.clusters);
    SerTable before = estimate_ser(ck.pre_security, &code, grid, eval.eve_extra_snr_db,
                                   eval.samples_per_point, before_rng);
    SerTable after =
        estimate_ser(ck.final_model, &code, grid, eval.eve_extra_snr_db, eval.samples_per_point, after_rng);
    write_ser_csv((out / "ser_before_secure.csv").string(), before, hash, seed);
    write_ser_csv((out / "ser_after_secure.csv").string(), after, hash, seed);

    const LeakageReport leak =
        leakage_proxy(ck.final_model, code, ck.config.bob_train_snr_db, eval.eve_extra_snr_db,
                      std::max(eval.samples_per_point, 10000L), leak_rng);
    nlohmann::json report{{"config_hash", hash},
                          {"seed", seed},
                          {"samples", leak.samples},
                          {"leakage_mi_bits", leak.mi_bits},
                          {"eve_message_err", leak.eve_message_err},
                          {"chance_error", leak.chance_error},
                          {"secure_rate_bits_per_use", leak.secure_rate_bits},
                          {"unsecured_rate_bits_per_use", leak.unsecured_rate_bits}};
    write_text_file((out / "leakage.json").string(), report.dump(2) + "\n");

    std::cout << "evaluation complete; wrote ser_before_secure.csv, ser_after_secure.csv, "
                 "leakage.json under "
              << out_dir << "\n";
    return kExitOk;
}

int cmd_capacity(double power, double bob_snr_db, std::optional<double> eve_extra_snr_db,
                 std::optional<double> eve_extra_variance) {
    if (!(power > 0.0)) throw ParamError("power: must be positive");
    if (!eve_extra_snr_db && !eve_extra_variance)
        throw ParamError("capacity: provide --eve-extra-snr-db or --eve-extra-variance");
    const double bob_var = snr_db_to_variance(bob_snr_db);
    const double eve_var =
        eve_extra_variance ? *eve_extra_variance : snr_db_to_variance(*eve_extra_snr_db);
    const double nats = secrecy_capacity_nats(power, bob_var, eve_var);
    const double bits = secrecy_capacity_bits(power, bob_var, eve_var);
    std::printf("secrecy capacity: %.12f bits (%.12f nats)\n", bits, nats);
    return kExitOk;
}

int cmd_export_constellation(const std::string& checkpoint_path, const std::string& snapshot,
                             const std::string& out_dir, bool regions, std::size_t resolution,
                             std::optional<double> radius) {
    Checkpoint ck = load_checkpoint(checkpoint_path);
    if (snapshot != "pre_security" && snapshot != "final")
        throw ParamError("snapshot: expected \"pre_security\" or \"final\"");
    const WiretapModel& model = snapshot == "final" ? ck.final_model : ck.pre_security;

    ensure_dir(out_dir);
    const fs::path out(out_dir);
    const std::string hash = ck.hash();

    write_codebook_csv((out / ("constellation_" + snapshot + ".csv")).string(), extract_codebook(model),
                       hash, ck.seed);
    std::cout << "wrote constellation_" << snapshot << ".csv\n";

    if (regions) {
        const double r = radius ? *radius : default_decision_region_radius(model.codeword_dim);
        write_decision_region_csv(
            (out / ("regions_bob_" + snapshot + ".csv")).string(),
            export_decision_regions(model.bob, model.codeword_dim, resolution, r), hash, ck.seed);
        write_decision_region_csv(
            (out / ("regions_eve_" + snapshot + ".csv")).string(),
            export_decision_regions(model.eve, model.codeword_dim, resolution, r), hash, ck.seed);
        std::cout << "wrote regions_bob_" << snapshot << ".csv, regions_eve_" << snapshot << ".csv\n";
    }
    return kExitOk;
}

int cmd_cluster(const std::string& checkpoint_path, int clusters, const std::string& snapshot,
                std::optional<std::uint64_t> seed_opt, const std::string& out_dir) {
    Checkpoint ck = load_checkpoint(checkpoint_path);
    if (snapshot != "pre_security" && snapshot != "final")
        throw ParamError("snapshot: expected \"pre_security\" or \"final\"");
    const WiretapModel& model = snapshot == "final" ? ck.final_model : ck.pre_security;
    if (clusters <= 0 || model.message_count % static_cast<std::size_t>(clusters) != 0)
        throw ParamError("clusters: l must divide |M|");

    const std::uint64_t seed = seed_opt ? *seed_opt : splitmix64(ck.seed ^ 0xC1u);
    RngStream rng(seed);
    const Codebook book = extract_codebook(model);
    const ClusterAssignment assignment = balanced_kmeans(book.codewords, clusters, rng);

    ensure_dir(out_dir);
    write_cluster_csv((fs::path(out_dir) / ("clusters_" + snapshot + ".csv")).string(), assignment,
                      ck.hash(), seed);
    std::cout << "wrote clusters_" << snapshot << ".csv\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autoencoder for the degraded Gaussian wiretap channel"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "Run the four-phase training pipeline");
    std::string train_config;
    std::string train_out;
    std::uint64_t train_seed = 0;
    bool train_seed_set = false;
    bool diagnostic_naive = false;
    train->add_option("--config", train_config, "Run configuration (JSON)")->required();
    auto* train_seed_opt = train->add_option("--seed", train_seed, "Override the config seed");
    train->add_option("--out", train_out, "Override the output directory");
    train->add_flag("--diagnostic-naive-loss", diagnostic_naive,
                    "Train with the unstable difference loss instead of phase 3 (diagnostic)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Error-rate sweep and leakage report");
    std::string eval_checkpoint;
    std::string eval_out;
    double snr_start = 0, snr_stop = 0, snr_step = 0, eval_eve_extra = 0;
    long eval_samples = 0;
    std::uint64_t eval_seed = 0;
    evaluate->add_option("--checkpoint", eval_checkpoint, "Checkpoint file")->required();
    auto* o_start = evaluate->add_option("--snr-start-db", snr_start, "Sweep start (dB)");
    auto* o_stop = evaluate->add_option("--snr-stop-db", snr_stop, "Sweep stop (dB)");
    auto* o_step = evaluate->add_option("--snr-step-db", snr_step, "Sweep step (dB)");
    auto* o_extra = evaluate->add_option("--eve-extra-snr-db", eval_eve_extra, "Eve's extra noise (dB)");
    auto* o_samples = evaluate->add_option("--samples", eval_samples, "Samples per SNR point");
    auto* o_eseed = evaluate->add_option("--seed", eval_seed, "Evaluation RNG seed");
    evaluate->add_option("--out", eval_out, "Override the output directory");

    // capacity
    auto* capacity = app.add_subcommand("capacity", "Print the secrecy capacity");
    double cap_power = 1.0, cap_bob_db = 10.0, cap_eve_db = 0.0, cap_eve_var = 0.0;
    capacity->add_option("--power", cap_power, "Average transmit power P")->required();
    capacity->add_option("--bob-snr-db", cap_bob_db, "Legitimate channel SNR (dB)")->required();
    auto* o_cap_eve_db = capacity->add_option("--eve-extra-snr-db", cap_eve_db, "Eve's extra noise (dB)");
    auto* o_cap_eve_var =
        capacity->add_option("--eve-extra-variance", cap_eve_var, "Eve's extra noise variance (linear)");

    // export-constellation
    auto* exportc = app.add_subcommand("export-constellation", "Write constellation (and regions) CSVs");
    std::string exp_checkpoint, exp_snapshot = "final", exp_out = ".";
    bool exp_regions = false;
    std::size_t exp_resolution = 201;
    double exp_radius = 0.0;
    exportc->add_option("--checkpoint", exp_checkpoint, "Checkpoint file")->required();
    exportc->add_option("--snapshot", exp_snapshot, "pre_security or final");
    exportc->add_option("--out", exp_out, "Output directory");
    exportc->add_flag("--regions", exp_regions, "Also export decoder decision regions (n=2 only)");
    exportc->add_option("--resolution", exp_resolution, "Decision-region grid resolution");
    auto* o_radius = exportc->add_option("--radius", exp_radius, "Decision-region half-extent");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Balanced k-means over a stored constellation");
    std::string clu_checkpoint, clu_snapshot = "pre_security", clu_out = ".";
    int clu_count = 4;
    std::uint64_t clu_seed = 0;
    cluster->add_option("--checkpoint", clu_checkpoint, "Checkpoint file")->required();
    cluster->add_option("--clusters", clu_count, "Cluster count l")->required();
    cluster->add_option("--snapshot", clu_snapshot, "pre_security or final");
    auto* o_cseed = cluster->add_option("--seed", clu_seed, "Clustering RNG seed");
    cluster->add_option("--out", clu_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*train) {
            train_seed_set = train_seed_opt->count() > 0;
            return cmd_train(train_config,
                             train_seed_set ? std::optional<std::uint64_t>(train_seed) : std::nullopt,
                             train_out, diagnostic_naive);
        }
        if (*evaluate) {
            return cmd_evaluate(
                eval_checkpoint, o_start->count() ? std::optional<double>(snr_start) : std::nullopt,
                o_stop->count() ? std::optional<double>(snr_stop) : std::nullopt,
                o_step->count() ? std::optional<double>(snr_step) : std::nullopt,
                o_extra->count() ? std::optional<double>(eval_eve_extra) : std::nullopt,
                o_samples->count() ? std::optional<long>(eval_samples) : std::nullopt,
                o_eseed->count() ? std::optional<std::uint64_t>(eval_seed) : std::nullopt, eval_out);
        }
        if (*capacity) {
            return cmd_capacity(cap_power, cap_bob_db,
                                o_cap_eve_db->count() ? std::optional<double>(cap_eve_db) : std::nullopt,
                                o_cap_eve_var->count() ? std::optional<double>(cap_eve_var)
                                                       : std::nullopt);
        }
        if (*exportc) {
            return cmd_export_constellation(
                exp_checkpoint, exp_snapshot, exp_out, exp_regions, exp_resolution,
                o_radius->count() ? std::optional<double>(exp_radius) : std::nullopt);
        }
        if (*cluster) {
            return cmd_cluster(clu_checkpoint, clu_count, clu_snapshot,
                               o_cseed->count() ? std::optional<std::uint64_t>(clu_seed) : std::nullopt,
                               clu_out);
        }
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
