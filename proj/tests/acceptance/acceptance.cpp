// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wiretap/checkpoint.hpp"
#include "wiretap/clustering.hpp"
#include "wiretap/csv.hpp"
#include "wiretap/eval.hpp"
#include "wiretap/training.hpp"

using namespace wiretap;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Gradient suite: every layer and both active losses vs central finite
//    differences, 20 random instances each, rel err < 1e-4, under 10 s.
// ---------------------------------------------------------------------------
Criterion criterion_gradients() {
    Criterion c{1, "gradient-suite"};
    const auto start = std::chrono::steady_clock::now();

    double worst = 0.0;
    std::size_t total_checked = 0;
    for (int use_security = 0; use_security <= 1; ++use_security) {
        for (int instance = 0; instance < 20; ++instance) {
            RngStream rng(static_cast<std::uint64_t>(1000 + 100 * use_security + instance));
            const Normalization mode =
                instance % 2 == 0 ? Normalization::batch_average : Normalization::per_symbol;
            WiretapModel model = make_wiretap_model({8, 2, mode}, rng);

            test::FixedNoiseGraph graph;
            graph.model = &model;
            graph.use_security = use_security == 1;
            graph.alpha = 0.35 + 0.3 * rng.uniform();

            std::vector<int> messages(4);
            for (auto& m : messages) m = rng.uniform_int(8);
            graph.s = one_hot(messages, 8);
            graph.bob_noise = Matrix(4, 2);
            graph.eve_noise = Matrix(4, 2);
            const double sb = std::sqrt(snr_db_to_variance(12.0));
            const double se = std::sqrt(snr_db_to_variance(5.0));
            for (double& v : graph.bob_noise.storage()) v = sb * rng.gaussian();
            for (double& v : graph.eve_noise.storage()) v = se * rng.gaussian();

            ClusterAssignment clusters;
            clusters.labels = {0, 0, 1, 1, 2, 2, 3, 3};
            clusters.cluster_count = 4;
            clusters.cluster_size = 2;
            clusters.centers = Matrix(4, 2);
            graph.equalized = equalize(graph.s, build_equalization(clusters));

            StackGrads enc_grads, bob_grads, eve_grads;
            graph.gradients(enc_grads, bob_grads, eve_grads);

            std::vector<LayerStack*> stacks{&model.encoder, &model.bob};
            std::vector<const StackGrads*> grads{&enc_grads, &bob_grads};
            if (graph.use_security) {
                stacks.push_back(&model.eve);
                grads.push_back(&eve_grads);
            }
            const auto report =
                test::finite_difference_check(stacks, grads, [&]() { return graph.loss(); });
            worst = std::max(worst, report.max_rel_err);
            total_checked += report.checked;
        }
    }

    c.seconds = elapsed_since(start);
    c.pass = worst < 1e-4 && c.seconds < 10.0;
    c.detail = "max rel err " + fmt(worst) + " over " + std::to_string(total_checked) +
               " parameters, " + fmt(c.seconds) + " s (limit 10 s)";
    return c;
}

// ---------------------------------------------------------------------------
// 2. Algorithm-1 oracle: worked 4x4 block matrix plus identity and uniform
//    edge cases, exact.
// ---------------------------------------------------------------------------
Criterion criterion_equalization() {
    Criterion c{2, "equalization-operator"};
    const auto start = std::chrono::steady_clock::now();

    ClusterAssignment worked;
    worked.labels = {0, 0, 1, 1};
    worked.cluster_count = 2;
    worked.cluster_size = 2;
    worked.centers = Matrix(2, 2);
    const Matrix e = build_equalization(worked);
    const double expect[4][4] = {{0.5, 0.5, 0.0, 0.0},
                                 {0.5, 0.5, 0.0, 0.0},
                                 {0.0, 0.0, 0.5, 0.5},
                                 {0.0, 0.0, 0.5, 0.5}};
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) ok = ok && e(i, k) == expect[i][k];

    const Matrix sbar = equalize(Matrix::identity(4), e);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) ok = ok && sbar(i, k) == expect[i][k];

    ClusterAssignment singletons;
    singletons.labels = {0, 1, 2, 3};
    singletons.cluster_count = 4;
    singletons.cluster_size = 1;
    singletons.centers = Matrix(4, 2);
    const Matrix id = build_equalization(singletons);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) ok = ok && id(i, k) == (i == k ? 1.0 : 0.0);

    ClusterAssignment single;
    single.labels = {0, 0, 0, 0};
    single.cluster_count = 1;
    single.cluster_size = 4;
    single.centers = Matrix(1, 2);
    const Matrix uniform = build_equalization(single);
    for (double v : uniform.storage()) ok = ok && v == 0.25;

    c.seconds = elapsed_since(start);
    c.pass = ok;
    c.detail = ok ? "worked example, identity and uniform all exact" : "matrix mismatch";
    return c;
}

// ---------------------------------------------------------------------------
// 3. Normalization exactness: both power constraints hold as equalities
//    within 1e-9 on 1000 random batches.
// ---------------------------------------------------------------------------
Criterion criterion_normalization() {
    Criterion c{3, "normalization-exactness"};
    const auto start = std::chrono::steady_clock::now();

    RngStream rng(33);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t rows = 1 + static_cast<std::size_t>(rng.uniform_int(40));
        const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform_int(6));
        Matrix x(rows, dim);
        for (double& v : x.storage()) v = 4.0 * rng.gaussian();
        for (std::size_t r = 0; r < rows; ++r)
            if (squared_row_norm(x, r) == 0.0) x(r, 0) = 1.0;

        const Matrix per = normalize_per_symbol(x, dim);
        for (std::size_t r = 0; r < rows; ++r)
            worst = std::max(worst, std::fabs(squared_row_norm(per, r) - static_cast<double>(dim)));

        const Matrix batch = normalize_batch_average(x, dim);
        double mean = 0.0;
        for (std::size_t r = 0; r < rows; ++r) mean += squared_row_norm(batch, r);
        mean /= static_cast<double>(rows);
        worst = std::max(worst, std::fabs(mean - static_cast<double>(dim)));
    }

    c.seconds = elapsed_since(start);
    c.pass = worst < 1e-9;
    c.detail = "worst constraint violation " + fmt(worst) + " (limit 1e-9)";
    return c;
}

// ---------------------------------------------------------------------------
// 4. Phase-1 reproduction: 16 messages, n=2, 12 dB, fixed seed. Bob's SER
//    under 0.02 at the training SNR and a monotone sweep, under 5 minutes.
// ---------------------------------------------------------------------------
Criterion criterion_phase1() {
    Criterion c{4, "phase1-reproduction"};
    const auto start = std::chrono::steady_clock::now();

    RngStream init(12001);
    Trainer trainer(make_wiretap_model({16, 2, Normalization::batch_average}, init));
    Schedule schedule;
    RngStream phase_rng(12002);
    trainer.run_phase(make_phase_config(1, 5000, 0.7, 12.0, 5.0), schedule, phase_rng);

    std::vector<double> grid;
    for (int db = -4; db <= 16; ++db) grid.push_back(static_cast<double>(db));
    RngStream eval_rng(12003);
    const SerTable table = estimate_ser(trainer.model(), nullptr, grid, 5.0, 50000, eval_rng);

    const double ser_at_train = table.rows[16].bob_symbol_err;  // grid[16] = 12 dB
    bool monotone = true;
    int inversions = 0;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const double prev = table.rows[i - 1].bob_symbol_err;
        const double now = table.rows[i].bob_symbol_err;
        if (now > prev) {
            inversions += 1;
            const double band =
                table.rows[i - 1].bob_symbol_halfwidth + table.rows[i].bob_symbol_halfwidth;
            if (now - prev > band) monotone = false;  // beyond Monte Carlo noise
        }
    }
    if (inversions > 1) monotone = false;

    c.seconds = elapsed_since(start);
    c.pass = ser_at_train < 0.02 && monotone && c.seconds < 300.0;
    c.detail = "bob SER at 12 dB " + fmt(ser_at_train) + " (limit 0.02), inversions " +
               std::to_string(inversions) + " (band-limited, max 1), " + fmt(c.seconds) +
               " s (limit 300 s)";
    return c;
}

// ---------------------------------------------------------------------------
// 5. Security effect on >= 9/10 seeds: (a) within/between distance ratio
//    strictly decreases, (b) Eve's symbol SER at her channel rises above her
//    phase-2 level, (c) Bob degrades but stays below Eve at every sweep point.
// ---------------------------------------------------------------------------
Criterion criterion_security_effect() {
    Criterion c{5, "security-effect"};
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> grid;
    for (int db = -4; db <= 16; ++db) grid.push_back(static_cast<double>(db));

    int passing_seeds = 0;
    std::string per_seed;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PipelineOptions o;
        o.bob_snr_db = 12.0;
        o.eve_extra_snr_db = 5.0;
        o.alpha = 0.7;
        o.phase1_steps = 3000;
        o.phase2_steps = 1500;
        o.phase3_steps = 3000;
        o.phase4_steps = 1500;
        o.seed = 37000 + seed;
        const PipelineResult r = run_full_pipeline(o);

        const double ratio_before = within_between_ratio(r.phase1_codebook.codewords, r.clusters);
        const double ratio_after = within_between_ratio(r.final_codebook.codewords, r.clusters);
        const bool tightened = ratio_after < ratio_before;

        RngStream eval_rng(91000 + seed);
        RngStream eve_before_rng = eval_rng.split(0);
        RngStream eve_after_rng = eval_rng.split(1);
        RngStream sweep_rng = eval_rng.split(2);

        const SerTable eve_before =
            estimate_ser(r.pre_security_model, nullptr, {12.0}, 5.0, 20000, eve_before_rng);
        const SerTable eve_after =
            estimate_ser(r.final_model, nullptr, {12.0}, 5.0, 20000, eve_after_rng);
        const bool eve_rises = eve_after.rows[0].eve_symbol_err > eve_before.rows[0].eve_symbol_err;
        const bool bob_degrades =
            eve_after.rows[0].bob_symbol_err > eve_before.rows[0].bob_symbol_err;

        const SerTable sweep = estimate_ser(r.final_model, nullptr, grid, 5.0, 20000, sweep_rng);
        bool bob_below = true;
        for (const SerRow& row : sweep.rows)
            if (row.bob_symbol_err >= row.eve_symbol_err) bob_below = false;

        const bool seed_ok = tightened && eve_rises && bob_degrades && bob_below;
        if (seed_ok) passing_seeds += 1;
        per_seed += seed_ok ? 'P' : 'F';
    }

    c.seconds = elapsed_since(start);
    c.pass = passing_seeds >= 9;
    c.detail = std::to_string(passing_seeds) + "/10 seeds [" + per_seed + "] (need 9), " +
               fmt(c.seconds) + " s";
    return c;
}

// ---------------------------------------------------------------------------
// 6. Coset-code chance-level leakage at test conditions (Bob 10 dB, Eve
//    extra 7 dB, alpha 0.3, n=32): Eve's secure-message error within 3 sigma
//    of 0.75 while Bob's stays below 0.05, 50000 samples, under 5 minutes.
// ---------------------------------------------------------------------------
Criterion criterion_coset_leakage() {
    Criterion c{6, "coset-chance-leakage"};
    const auto start = std::chrono::steady_clock::now();

    PipelineOptions o;
    o.codeword_dim = 32;
    o.bob_snr_db = 10.0;
    o.eve_extra_snr_db = 7.0;
    o.alpha = 0.3;
    o.phase1_steps = 4000;
    o.phase2_steps = 2000;
    o.phase3_steps = 4000;
    o.phase4_steps = 2000;
    o.seed = 271828;
    const PipelineResult r = run_full_pipeline(o);
    const CosetCode code = make_coset_code(r.clusters);

    RngStream eval_rng(314159);
    const SerTable table = estimate_ser(r.final_model, &code, {10.0}, 7.0, 50000, eval_rng);
    const SerRow& row = table.rows[0];

    const double sigma = std::sqrt(0.75 * 0.25 / 50000.0);
    const bool eve_chance = std::fabs(row.eve_message_err - 0.75) <= 3.0 * sigma;
    const bool bob_reliable = row.bob_message_err < 0.05;

    c.seconds = elapsed_since(start);
    c.pass = eve_chance && bob_reliable && c.seconds < 300.0;
    c.detail = "eve message err " + fmt(row.eve_message_err) + " vs 0.75 +/- " + fmt(3.0 * sigma) +
               (eve_chance ? " (ok)" : " (out of band)") + "; bob message err " +
               fmt(row.bob_message_err) + " (limit 0.05); eve symbol err " + fmt(row.eve_symbol_err) +
               "; " + fmt(c.seconds) + " s (limit 300 s)";
    return c;
}

// ---------------------------------------------------------------------------
// 7. Secrecy-capacity formula vs a numerical-integration oracle at three
//    parameter triples, to 1e-6.
// ---------------------------------------------------------------------------
double gaussian_entropy_quadrature(double variance) {
    const double sigma = std::sqrt(variance);
    const double lo = -12.0 * sigma, hi = 12.0 * sigma;
    const int intervals = 40000;
    const double h = (hi - lo) / intervals;
    auto integrand = [&](double x) {
        const double p = std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * M_PI * variance);
        return p > 0.0 ? -p * std::log(p) : 0.0;
    };
    double acc = integrand(lo) + integrand(hi);
    for (int i = 1; i < intervals; ++i) acc += integrand(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

Criterion criterion_capacity() {
    Criterion c{7, "secrecy-capacity-formula"};
    const auto start = std::chrono::steady_clock::now();

    const double triples[3][3] = {{1.0, 0.1, 0.9}, {2.5, 0.3, 0.2}, {0.7, 1.1, 2.4}};
    double worst = 0.0;
    for (const auto& t : triples) {
        const double closed = secrecy_capacity_nats(t[0], t[1], t[2]);
        const double integrated = gaussian_entropy_quadrature(t[0] + t[1]) -
                                  gaussian_entropy_quadrature(t[1]) -
                                  gaussian_entropy_quadrature(t[0] + t[1] + t[2]) +
                                  gaussian_entropy_quadrature(t[1] + t[2]);
        worst = std::max(worst, std::fabs(closed - integrated));
    }

    c.seconds = elapsed_since(start);
    c.pass = worst < 1e-6;
    c.detail = "worst |closed - integrated| " + fmt(worst) + " (limit 1e-6)";
    return c;
}

// ---------------------------------------------------------------------------
// 8. Naive-loss instability: the diagnostic difference loss drops below -10
//    within 500 steps on a fixed seed.
// ---------------------------------------------------------------------------
Criterion criterion_naive_instability() {
    Criterion c{8, "naive-loss-instability"};
    const auto start = std::chrono::steady_clock::now();

    RngStream init(48109);
    Trainer trainer(make_wiretap_model({16, 2, Normalization::batch_average}, init));
    Schedule schedule;
    RngStream phase_rng(48110);
    trainer.run_phase(make_phase_config(1, 800, 0.7, 12.0, 5.0), schedule, phase_rng);
    trainer.run_phase(make_phase_config(2, 400, 0.7, 12.0, 5.0), schedule, phase_rng);

    RngStream naive_rng(48111);
    const auto trace = trainer.run_naive_diagnostic(500, schedule, 12.0, 5.0, naive_rng);
    double lowest = 0.0;
    int first_below = -1;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        lowest = std::min(lowest, trace[i].loss);
        if (first_below < 0 && trace[i].loss < -10.0) first_below = static_cast<int>(i);
    }

    c.seconds = elapsed_since(start);
    c.pass = lowest < -10.0;
    c.detail = "lowest loss " + fmt(lowest) + (first_below >= 0
                   ? " (first below -10 at step " + std::to_string(first_below) + " of 500)"
                   : " (never below -10)");
    return c;
}

// ---------------------------------------------------------------------------
// 9. Determinism: the full pipeline twice with the same seed produces
//    bit-identical checkpoints and CSV artifacts.
// ---------------------------------------------------------------------------
std::string file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Criterion criterion_determinism() {
    Criterion c{9, "determinism"};
    const auto start = std::chrono::steady_clock::now();

    RunConfig config;
    config.seed = 90125;
    config.seed_set = true;
    config.phase1_steps = 400;
    config.phase2_steps = 250;
    config.phase3_steps = 400;
    config.phase4_steps = 250;
    config.eval.snr_start_db = 8.0;
    config.eval.snr_stop_db = 12.0;
    config.eval.snr_step_db = 2.0;
    config.eval.samples_per_point = 2000;
    const std::string hash = config_hash(config);

    auto run_and_write = [&](const fs::path& dir) {
        fs::remove_all(dir);
        fs::create_directories(dir);
        const PipelineResult r = run_full_pipeline(pipeline_options(config));
        Checkpoint ck;
        ck.config = config;
        ck.seed = config.seed;
        ck.pre_security = r.pre_security_model;
        ck.final_model = r.final_model;
        ck.clusters = r.clusters;
        save_checkpoint(ck, (dir / "checkpoint.json").string());
        write_trace_csv((dir / "loss_trace.csv").string(), r.trace, hash, config.seed);
        write_codebook_csv((dir / "constellation_final.csv").string(), r.final_codebook, hash,
                           config.seed);
        write_cluster_csv((dir / "clusters.csv").string(), r.clusters, hash, config.seed);
        const CosetCode code = make_coset_code(r.clusters);
        RngStream eval_rng(splitmix64(config.seed ^ 0xE7A1u));
        const SerTable table = estimate_ser(r.final_model, &code, config.eval.snr_grid(),
                                            config.eval.eve_extra_snr_db,
                                            config.eval.samples_per_point, eval_rng);
        write_ser_csv((dir / "ser.csv").string(), table, hash, config.seed);
    };

    const fs::path dir_a = fs::temp_directory_path() / "wiretap_acceptance_a";
    const fs::path dir_b = fs::temp_directory_path() / "wiretap_acceptance_b";
    run_and_write(dir_a);
    run_and_write(dir_b);

    bool ok = true;
    std::string mismatch;
    for (const char* name :
         {"checkpoint.json", "loss_trace.csv", "constellation_final.csv", "clusters.csv", "ser.csv"}) {
        if (file_bytes(dir_a / name) != file_bytes(dir_b / name)) {
            ok = false;
            mismatch += std::string(name) + " ";
        }
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    c.seconds = elapsed_since(start);
    c.pass = ok;
    c.detail = ok ? "checkpoint and all CSV artifacts byte-identical"
                  : "mismatched artifacts: " + mismatch;
    return c;
}

}  // namespace

int main() {
    std::vector<std::function<Criterion()>> criteria{
        criterion_gradients,   criterion_equalization,      criterion_normalization,
        criterion_phase1,      criterion_security_effect,   criterion_coset_leakage,
        criterion_capacity,    criterion_naive_instability, criterion_determinism,
    };

    int failures = 0;
    for (auto& fn : criteria) {
        const Criterion c = fn();
        std::printf("[%s] criterion %d (%s): %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    c.detail.c_str());
        std::fflush(stdout);
        if (!c.pass) failures += 1;
    }
    if (failures > 0) std::printf("%d of 9 criteria failed\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
