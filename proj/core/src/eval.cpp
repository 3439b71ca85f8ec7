#include "wiretap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wiretap/channel.hpp"
#include "wiretap/errors.hpp"

namespace wiretap {

double wilson_halfwidth(long errors, long samples) {
    if (samples <= 0) throw ParamError("wilson_halfwidth: samples must be positive");
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

namespace {

struct PointTally {
    long bob_symbol = 0;
    long eve_symbol = 0;
    long bob_message = 0;
    long eve_message = 0;
};

SerRow tally_to_row(double snr_db, const PointTally& t, long samples) {
    SerRow row;
    row.snr_db = snr_db;
    row.samples = samples;
    const double n = static_cast<double>(samples);
    row.bob_symbol_err = static_cast<double>(t.bob_symbol) / n;
    row.eve_symbol_err = static_cast<double>(t.eve_symbol) / n;
    row.bob_message_err = static_cast<double>(t.bob_message) / n;
    row.eve_message_err = static_cast<double>(t.eve_message) / n;
    row.bob_symbol_halfwidth = wilson_halfwidth(t.bob_symbol, samples);
    row.eve_symbol_halfwidth = wilson_halfwidth(t.eve_symbol, samples);
    row.bob_message_halfwidth = wilson_halfwidth(t.bob_message, samples);
    row.eve_message_halfwidth = wilson_halfwidth(t.eve_message, samples);
    return row;
}

}  // namespace

SerTable estimate_ser(const WiretapModel& model, const CosetCode* code,
                      const std::vector<double>& snr_grid_db, double eve_extra_snr_db,
                      long samples_per_point, RngStream& rng) {
    if (snr_grid_db.empty()) throw ParamError("estimate_ser: empty SNR grid");
    if (samples_per_point < 1000) throw ParamError("estimate_ser: need at least 1000 samples per point");

    const Codebook book = extract_codebook(model);
    const double eve_var = snr_db_to_variance(eve_extra_snr_db);
    const long chunk = 5000;

    SerTable table;
    for (std::size_t pi = 0; pi < snr_grid_db.size(); ++pi) {
        RngStream point_rng = rng.split(pi);
        const double bob_var = snr_db_to_variance(snr_grid_db[pi]);
        PointTally tally;

        long done = 0;
        while (done < samples_per_point) {
            const long batch = std::min(chunk, samples_per_point - done);
            std::vector<int> symbols(static_cast<std::size_t>(batch));
            std::vector<int> secure(static_cast<std::size_t>(batch));
            Matrix x(static_cast<std::size_t>(batch), model.codeword_dim);
            for (long i = 0; i < batch; ++i) {
                int sym;
                if (code) {
                    secure[static_cast<std::size_t>(i)] =
                        point_rng.uniform_int(code->secure_message_count());
                    sym = encode_secure(*code, secure[static_cast<std::size_t>(i)], point_rng);
                } else {
                    sym = point_rng.uniform_int(static_cast<int>(model.message_count));
                }
                symbols[static_cast<std::size_t>(i)] = sym;
                x.set_row(static_cast<std::size_t>(i), book.codewords.row(static_cast<std::size_t>(sym)));
            }

            const Matrix y = bob_channel(x, bob_var, point_rng);
            const Matrix z = eve_channel(y, eve_var, point_rng);
            const std::vector<int> bob_hat = argmax_rows(decode(model.bob, y));
            const std::vector<int> eve_hat = argmax_rows(decode(model.eve, z));

            for (long i = 0; i < batch; ++i) {
                const auto k = static_cast<std::size_t>(i);
                if (bob_hat[k] != symbols[k]) tally.bob_symbol += 1;
                if (eve_hat[k] != symbols[k]) tally.eve_symbol += 1;
                if (code) {
                    if (decode_secure(*code, bob_hat[k]) != secure[k]) tally.bob_message += 1;
                    if (decode_secure(*code, eve_hat[k]) != secure[k]) tally.eve_message += 1;
                } else {
                    if (bob_hat[k] != symbols[k]) tally.bob_message += 1;
                    if (eve_hat[k] != symbols[k]) tally.eve_message += 1;
                }
            }
            done += batch;
        }
        table.rows.push_back(tally_to_row(snr_grid_db[pi], tally, samples_per_point));
    }
    return table;
}

double secrecy_capacity_nats(double power, double bob_variance, double eve_extra_variance) {
    if (!(power > 0.0)) throw ParamError("secrecy_capacity: power must be positive");
    if (!(bob_variance > 0.0)) throw ParamError("secrecy_capacity: Bob variance must be positive");
    if (eve_extra_variance < 0.0) throw ParamError("secrecy_capacity: Eve variance must be non-negative");
    return 0.5 * std::log(1.0 + power / bob_variance) -
           0.5 * std::log(1.0 + power / (bob_variance + eve_extra_variance));
}

double secrecy_capacity_bits(double power, double bob_variance, double eve_extra_variance) {
    return secrecy_capacity_nats(power, bob_variance, eve_extra_variance) / M_LN2;
}

double default_decision_region_radius(std::size_t codeword_dim) {
    return 1.5 * std::sqrt(static_cast<double>(codeword_dim));
}

DecisionRegionGrid export_decision_regions(const LayerStack& decoder, std::size_t codeword_dim,
                                           std::size_t resolution, double radius) {
    if (codeword_dim != 2)
        throw ParamError("export_decision_regions: only supported for codeword dimension 2");
    if (resolution < 2) throw ParamError("export_decision_regions: resolution must be at least 2");
    if (!(radius > 0.0)) throw ParamError("export_decision_regions: radius must be positive");

    DecisionRegionGrid grid;
    grid.resolution = resolution;
    grid.radius = radius;
    grid.xs.reserve(resolution * resolution);
    grid.ys.reserve(resolution * resolution);

    Matrix points(resolution * resolution, 2);
    const double step = 2.0 * radius / static_cast<double>(resolution - 1);
    std::size_t r = 0;
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        const double y = -radius + static_cast<double>(iy) * step;
        for (std::size_t ix = 0; ix < resolution; ++ix, ++r) {
            const double x = -radius + static_cast<double>(ix) * step;
            points(r, 0) = x;
            points(r, 1) = y;
            grid.xs.push_back(x);
            grid.ys.push_back(y);
        }
    }
    grid.labels = argmax_rows(decode(decoder, points));
    return grid;
}

double plugin_mutual_information_bits(const Matrix& joint_counts) {
    double total = 0.0;
    for (double v : joint_counts.storage()) {
        if (v < 0.0) throw ParamError("plugin_mutual_information: negative count");
        total += v;
    }
    if (total <= 0.0) throw ParamError("plugin_mutual_information: empty table");

    std::vector<double> row_sum(joint_counts.rows(), 0.0);
    std::vector<double> col_sum(joint_counts.cols(), 0.0);
    for (std::size_t i = 0; i < joint_counts.rows(); ++i)
        for (std::size_t j = 0; j < joint_counts.cols(); ++j) {
            row_sum[i] += joint_counts(i, j);
            col_sum[j] += joint_counts(i, j);
        }

    double mi = 0.0;
    for (std::size_t i = 0; i < joint_counts.rows(); ++i) {
        for (std::size_t j = 0; j < joint_counts.cols(); ++j) {
            const double c = joint_counts(i, j);
            if (c <= 0.0) continue;
            mi += (c / total) * std::log2(c * total / (row_sum[i] * col_sum[j]));
        }
    }
    return mi;
}

LeakageReport leakage_proxy(const WiretapModel& model, const CosetCode& code, double bob_snr_db,
                            double eve_extra_snr_db, long samples, RngStream& rng) {
    if (samples < 10000) throw ParamError("leakage_proxy: need at least 10000 samples");

    const Codebook book = extract_codebook(model);
    const double bob_var = snr_db_to_variance(bob_snr_db);
    const double eve_var = snr_db_to_variance(eve_extra_snr_db);
    const int l = code.secure_message_count();
    Matrix joint(static_cast<std::size_t>(l), static_cast<std::size_t>(l));

    const long chunk = 5000;
    long eve_errors = 0;
    long done = 0;
    while (done < samples) {
        const long batch = std::min(chunk, samples - done);
        std::vector<int> secure(static_cast<std::size_t>(batch));
        Matrix x(static_cast<std::size_t>(batch), model.codeword_dim);
        for (long i = 0; i < batch; ++i) {
            const auto k = static_cast<std::size_t>(i);
            secure[k] = rng.uniform_int(l);
            const int sym = encode_secure(code, secure[k], rng);
            x.set_row(k, book.codewords.row(static_cast<std::size_t>(sym)));
        }
        const Matrix y = bob_channel(x, bob_var, rng);
        const Matrix z = eve_channel(y, eve_var, rng);
        const std::vector<int> eve_hat = argmax_rows(decode(model.eve, z));
        for (long i = 0; i < batch; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const int guess = decode_secure(code, eve_hat[k]);
            joint(static_cast<std::size_t>(secure[k]), static_cast<std::size_t>(guess)) += 1.0;
            if (guess != secure[k]) eve_errors += 1;
        }
        done += batch;
    }

    LeakageReport report;
    report.mi_bits = plugin_mutual_information_bits(joint);
    report.samples = samples;
    report.eve_message_err = static_cast<double>(eve_errors) / static_cast<double>(samples);
    report.chance_error = 1.0 - 1.0 / static_cast<double>(l);
    report.secure_rate_bits = secure_rate_bits_per_use(code, model.codeword_dim);
    report.unsecured_rate_bits = unsecured_rate_bits_per_use(model.message_count, model.codeword_dim);
    return report;
}

double within_between_ratio(const Matrix& points, const ClusterAssignment& assignment) {
    double within = 0.0;
    long within_pairs = 0;
    for (std::size_t i = 0; i < points.rows(); ++i)
        for (std::size_t j = i + 1; j < points.rows(); ++j)
            if (assignment.labels[i] == assignment.labels[j]) {
                within += euclidean_distance(points, i, points, j);
                within_pairs += 1;
            }

    const Matrix centers = cluster_centers(points, assignment.labels, assignment.cluster_count);
    double between = 0.0;
    long between_pairs = 0;
    for (std::size_t a = 0; a < centers.rows(); ++a)
        for (std::size_t b = a + 1; b < centers.rows(); ++b) {
            between += euclidean_distance(centers, a, centers, b);
            between_pairs += 1;
        }

    if (within_pairs == 0 || between_pairs == 0 || between <= 0.0)
        throw ParamError("within_between_ratio: degenerate assignment");
    return (within / static_cast<double>(within_pairs)) / (between / static_cast<double>(between_pairs));
}

}  // namespace wiretap
