#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/coset.hpp"
#include "wiretap/model.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

struct SerRow {
    double snr_db = 0.0;
    double bob_symbol_err = 0.0;
    double eve_symbol_err = 0.0;
    double bob_message_err = 0.0;
    double eve_message_err = 0.0;
    long samples = 0;
    double bob_symbol_halfwidth = 0.0;  // Wilson 95% interval halfwidths
    double eve_symbol_halfwidth = 0.0;
    double bob_message_halfwidth = 0.0;
    double eve_message_halfwidth = 0.0;
};

struct SerTable {
    std::vector<SerRow> rows;
};

// Monte Carlo error-rate sweep. Uniform messages are encoded, pushed
// through both channel stages and hard-decoded at each receiver. With a
// coset code, secure messages are drawn uniformly, the transmitted symbol
// is a random cluster member, and message errors come from decode_secure;
// without one, message errors equal symbol errors. Each grid point uses
// its own substream of rng, so points can be evaluated in any order.
SerTable estimate_ser(const WiretapModel& model, const CosetCode* code,
                      const std::vector<double>& snr_grid_db, double eve_extra_snr_db,
                      long samples_per_point, RngStream& rng);

double wilson_halfwidth(long errors, long samples);

// (1/2) log(1 + P/var_bob) - (1/2) log(1 + P/(var_bob + var_eve_extra)),
// in nats. var_eve_extra may be zero (no eavesdropper disadvantage).
double secrecy_capacity_nats(double power, double bob_variance, double eve_extra_variance);
double secrecy_capacity_bits(double power, double bob_variance, double eve_extra_variance);

// Hard-decision map of a 2-d decoder over [-radius, radius]^2.
struct DecisionRegionGrid {
    std::size_t resolution = 0;
    double radius = 0.0;
    std::vector<double> xs;      // cell centers, resolution^2 entries
    std::vector<double> ys;
    std::vector<int> labels;
};

DecisionRegionGrid export_decision_regions(const LayerStack& decoder, std::size_t codeword_dim,
                                           std::size_t resolution, double radius);

double default_decision_region_radius(std::size_t codeword_dim);

// Plug-in mutual information of a joint count table, in bits.
double plugin_mutual_information_bits(const Matrix& joint_counts);

struct LeakageReport {
    double mi_bits = 0.0;            // between secure message and Eve's decision
    long samples = 0;
    double eve_message_err = 0.0;
    double chance_error = 0.0;       // 1 - 1/l
    double secure_rate_bits = 0.0;   // log2(l)/n
    double unsecured_rate_bits = 0.0;
};

// Empirical leakage at Eve: plug-in MI between the secure message and her
// hard decision mapped through decode_secure. A coarse observable proxy,
// not an information-theoretic secrecy certificate.
LeakageReport leakage_proxy(const WiretapModel& model, const CosetCode& code, double bob_snr_db,
                            double eve_extra_snr_db, long samples, RngStream& rng);

// Constellation geometry: mean pairwise distance between points sharing a
// cluster, over the mean pairwise distance between cluster centers.
double within_between_ratio(const Matrix& points, const ClusterAssignment& assignment);

}  // namespace wiretap
