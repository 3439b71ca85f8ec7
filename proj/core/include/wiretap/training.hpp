#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/clustering.hpp"
#include "wiretap/model.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

enum class LossKind { bob_ce, eve_ce, security, joint_refresh };

struct PhaseConfig {
    int phase_id = 1;  // 1..4, executed in order
    int steps = 1000;
    LossKind loss_kind = LossKind::bob_ce;
    FreezeMask freeze;
    double alpha = 0.7;  // used by the security loss only
    double bob_snr_db = 12.0;
    double eve_extra_snr_db = 5.0;
};

// Canonical per-phase freeze/loss wiring:
//   1: train encoder+Bob, Eve frozen, standard cross-entropy.
//   2: encoder+Bob frozen, train Eve on her degraded channel.
//   3: Eve frozen, train encoder+Bob with the security loss (needs E).
//   4: encoder frozen, retrain Bob then Eve sequentially.
PhaseConfig make_phase_config(int phase_id, int steps, double alpha, double bob_snr_db,
                              double eve_extra_snr_db);

struct Schedule {
    double lr_start = 0.1;
    double lr_end = 0.001;
    int batch_start = 25;
    int batch_end = 300;

    double lr_at(int step, int total_steps) const;  // geometric decay
    int batch_at(int step, int total_steps) const;  // linear growth
};

struct LossTraceEntry {
    int step = 0;   // global step index across the run
    int phase = 0;  // 0 marks the naive diagnostic
    double loss = 0.0;
};

// Owns the model during training and enforces phase order. Fresh Adam
// state per phase (the learning rate restarts at lr_start each phase).
class Trainer {
public:
    explicit Trainer(WiretapModel model);

    std::vector<LossTraceEntry> run_phase(const PhaseConfig& phase, const Schedule& schedule,
                                          RngStream& rng);

    // Must be called before phase 3, with clusters of the constellation
    // the encoder produced in phase 1.
    void set_equalization(const ClusterAssignment& clusters);

    // Diagnostic only: trains encoder+Bob against a frozen Eve with the
    // unbounded difference loss. Never part of the regular pipeline.
    std::vector<LossTraceEntry> run_naive_diagnostic(int steps, const Schedule& schedule,
                                                     double bob_snr_db, double eve_extra_snr_db,
                                                     RngStream& rng);

    WiretapModel& model() { return model_; }
    const WiretapModel& model() const { return model_; }
    const ClusterAssignment* clusters() const { return clusters_ ? clusters_.get() : nullptr; }
    int completed_phases() const { return completed_phases_; }
    int global_step() const { return global_step_; }

private:
    enum class StepLoss { bob_ce, eve_ce, security, naive };

    std::vector<LossTraceEntry> train_steps(int phase_id, StepLoss kind, const FreezeMask& freeze,
                                            int steps, const Schedule& schedule, double alpha,
                                            double bob_snr_db, double eve_extra_snr_db, RngStream& rng);

    WiretapModel model_;
    std::unique_ptr<ClusterAssignment> clusters_;
    Matrix equalization_;
    int completed_phases_ = 0;
    int global_step_ = 0;
};

struct PipelineOptions {
    std::size_t message_count = 16;
    std::size_t codeword_dim = 2;
    int cluster_count = 4;
    Normalization normalization = Normalization::batch_average;
    double bob_snr_db = 12.0;
    double eve_extra_snr_db = 5.0;
    double alpha = 0.7;
    int phase1_steps = 5000;
    int phase2_steps = 3000;
    int phase3_steps = 5000;
    int phase4_steps = 3000;
    Schedule schedule;
    std::uint64_t seed = 1;
};

struct PipelineResult {
    WiretapModel pre_security_model;  // snapshot after phase 2, before secure coding
    WiretapModel final_model;         // after phase 4
    Codebook phase1_codebook;
    Codebook final_codebook;
    ClusterAssignment clusters;
    std::vector<LossTraceEntry> trace;
};

// Phases 1-4 with clustering of the phase-1 constellation inserted before
// phase 3. Deterministic for a fixed seed.
PipelineResult run_full_pipeline(const PipelineOptions& options);

}  // namespace wiretap
