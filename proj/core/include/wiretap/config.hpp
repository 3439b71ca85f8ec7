#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wiretap/model.hpp"
#include "wiretap/training.hpp"

namespace wiretap {

struct EvalSettings {
    double snr_start_db = -4.0;
    double snr_stop_db = 16.0;
    double snr_step_db = 1.0;
    double eve_extra_snr_db = 7.0;
    long samples_per_point = 50000;

    std::vector<double> snr_grid() const;
};

// Everything a reproducible run needs. The seed is mandatory; there is no
// entropy-from-clock fallback.
struct RunConfig {
    std::size_t message_count = 16;
    std::size_t codeword_dim = 2;
    int cluster_count = 4;
    Normalization normalization = Normalization::batch_average;
    double bob_train_snr_db = 12.0;
    double eve_extra_train_snr_db = 5.0;
    double alpha = 0.7;
    int phase1_steps = 5000;
    int phase2_steps = 3000;
    int phase3_steps = 5000;
    int phase4_steps = 3000;
    Schedule schedule;
    EvalSettings eval;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string output_dir = "out";
};

// Throws ParamError naming the offending field path.
RunConfig parse_run_config_text(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
void validate_run_config(const RunConfig& config);

// Canonical serialization; parse(serialize(c)) == c.
std::string serialize_run_config(const RunConfig& config);

// FNV-1a over the canonical serialization, hex.
std::string config_hash(const RunConfig& config);

PipelineOptions pipeline_options(const RunConfig& config);

std::string normalization_name(Normalization mode);
Normalization normalization_from_name(const std::string& name);

}  // namespace wiretap
