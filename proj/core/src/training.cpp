#include "wiretap/training.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "wiretap/errors.hpp"
#include "wiretap/losses.hpp"

namespace wiretap {

PhaseConfig make_phase_config(int phase_id, int steps, double alpha, double bob_snr_db,
                              double eve_extra_snr_db) {
    PhaseConfig cfg;
    cfg.phase_id = phase_id;
    cfg.steps = steps;
    cfg.alpha = alpha;
    cfg.bob_snr_db = bob_snr_db;
    cfg.eve_extra_snr_db = eve_extra_snr_db;
    switch (phase_id) {
        case 1:
            cfg.loss_kind = LossKind::bob_ce;
            cfg.freeze = {false, false, true};
            break;
        case 2:
            cfg.loss_kind = LossKind::eve_ce;
            cfg.freeze = {true, true, false};
            break;
        case 3:
            cfg.loss_kind = LossKind::security;
            cfg.freeze = {false, false, true};
            break;
        case 4:
            cfg.loss_kind = LossKind::joint_refresh;
            cfg.freeze = {true, false, false};
            break;
        default:
            throw ParamError("make_phase_config: phase_id must be 1..4");
    }
    return cfg;
}

double Schedule::lr_at(int step, int total_steps) const {
    if (total_steps <= 1) return lr_start;
    const double t = static_cast<double>(step) / static_cast<double>(total_steps - 1);
    return lr_start * std::pow(lr_end / lr_start, t);
}

int Schedule::batch_at(int step, int total_steps) const {
    if (total_steps <= 1) return batch_start;
    const double t = static_cast<double>(step) / static_cast<double>(total_steps - 1);
    return batch_start + static_cast<int>(std::lround(t * (batch_end - batch_start)));
}

Trainer::Trainer(WiretapModel model) : model_(std::move(model)) {}

void Trainer::set_equalization(const ClusterAssignment& clusters) {
    if (static_cast<std::size_t>(clusters.labels.size()) != model_.message_count)
        throw ParamError("set_equalization: assignment size does not match message count");
    clusters_ = std::make_unique<ClusterAssignment>(clusters);
    equalization_ = build_equalization(clusters);
}

namespace {

void validate_phase(const PhaseConfig& phase) {
    const PhaseConfig canonical =
        make_phase_config(phase.phase_id, phase.steps, phase.alpha, phase.bob_snr_db, phase.eve_extra_snr_db);
    if (phase.loss_kind != canonical.loss_kind)
        throw ParamError("run_phase: loss kind does not match phase " + std::to_string(phase.phase_id));
    if (phase.freeze.encoder_frozen != canonical.freeze.encoder_frozen ||
        phase.freeze.bob_frozen != canonical.freeze.bob_frozen ||
        phase.freeze.eve_frozen != canonical.freeze.eve_frozen)
        throw ParamError("run_phase: freeze mask does not match phase " + std::to_string(phase.phase_id));
    if (phase.steps <= 0) throw ParamError("run_phase: steps must be positive");
    if (phase.loss_kind == LossKind::security && !(phase.alpha >= 0.0 && phase.alpha <= 1.0))
        throw ParamError("run_phase: alpha must lie in [0, 1]");
}

std::vector<int> sample_messages(int batch, std::size_t message_count, RngStream& rng) {
    std::vector<int> messages(static_cast<std::size_t>(batch));
    for (auto& m : messages) m = rng.uniform_int(static_cast<int>(message_count));
    return messages;
}

}  // namespace

std::vector<LossTraceEntry> Trainer::train_steps(int phase_id, StepLoss kind, const FreezeMask& freeze,
                                                 int steps, const Schedule& schedule, double alpha,
                                                 double bob_snr_db, double eve_extra_snr_db,
                                                 RngStream& rng) {
    model_.apply_freeze(freeze);
    const double bob_var = snr_db_to_variance(bob_snr_db);
    const double eve_var = snr_db_to_variance(eve_extra_snr_db);
    const bool needs_bob =
        kind == StepLoss::bob_ce || kind == StepLoss::security || kind == StepLoss::naive;
    const bool needs_eve =
        kind == StepLoss::eve_ce || kind == StepLoss::security || kind == StepLoss::naive;

    AdamState enc_state = make_adam_state(model_.encoder);
    AdamState bob_state = make_adam_state(model_.bob);
    AdamState eve_state = make_adam_state(model_.eve);

    std::vector<LossTraceEntry> trace;
    trace.reserve(static_cast<std::size_t>(steps));

    for (int step = 0; step < steps; ++step) {
        const double lr = schedule.lr_at(step, steps);
        const int batch = schedule.batch_at(step, steps);
        const Matrix s = one_hot(sample_messages(batch, model_.message_count, rng), model_.message_count);

        Tape enc_tape;
        const Matrix pre_norm = stack_forward(model_.encoder, s, enc_tape);
        const Matrix x = normalize(pre_norm, model_.normalization, model_.codeword_dim);
        const Matrix y = bob_channel(x, bob_var, rng);

        Tape bob_tape, eve_tape;
        Matrix bob_probs, eve_probs, z;
        if (needs_bob) bob_probs = softmax_rows(stack_forward(model_.bob, y, bob_tape));
        if (needs_eve) {
            z = eve_channel(y, eve_var, rng);
            eve_probs = softmax_rows(stack_forward(model_.eve, z, eve_tape));
        }

        double loss_scalar = 0.0;
        Matrix bob_prob_grad, eve_prob_grad;
        switch (kind) {
            case StepLoss::bob_ce: {
                loss_scalar = cross_entropy(s, bob_probs).scalar;
                bob_prob_grad = cross_entropy_grad(s, bob_probs);
                break;
            }
            case StepLoss::eve_ce: {
                loss_scalar = cross_entropy(s, eve_probs).scalar;
                eve_prob_grad = cross_entropy_grad(s, eve_probs);
                break;
            }
            case StepLoss::security: {
                const Matrix equalized = equalize(s, equalization_);
                loss_scalar = security_loss(s, equalized, bob_probs, eve_probs, alpha).scalar;
                SecurityLossGrads g = security_loss_grads(s, equalized, bob_probs, eve_probs, alpha);
                bob_prob_grad = std::move(g.bob);
                eve_prob_grad = std::move(g.eve);
                break;
            }
            case StepLoss::naive: {
                loss_scalar = naive_difference_loss(s, bob_probs, eve_probs).scalar;
                NaiveLossGrads g = naive_difference_loss_grads(s, bob_probs, eve_probs);
                bob_prob_grad = std::move(g.bob);
                eve_prob_grad = std::move(g.eve);
                break;
            }
        }

        Matrix dx(x.rows(), x.cols());
        StackGrads bob_grads, eve_grads, enc_grads;
        if (bob_prob_grad.size() > 0) {
            const Matrix dlogits = softmax_backward(bob_probs, bob_prob_grad);
            dx = add(dx, stack_backward(model_.bob, bob_tape, dlogits, bob_grads));
        }
        if (eve_prob_grad.size() > 0) {
            const Matrix dlogits = softmax_backward(eve_probs, eve_prob_grad);
            // dz/dy and dy/dx are both identity: noise is additive.
            dx = add(dx, stack_backward(model_.eve, eve_tape, dlogits, eve_grads));
        }
        if (!model_.encoder.frozen) {
            const Matrix dpre = normalize_backward(pre_norm, model_.normalization, model_.codeword_dim, dx);
            stack_backward(model_.encoder, enc_tape, dpre, enc_grads);
        }

        if (!model_.encoder.frozen) adam_step(model_.encoder, enc_grads, enc_state, lr);
        if (!model_.bob.frozen && !bob_grads.empty()) adam_step(model_.bob, bob_grads, bob_state, lr);
        if (!model_.eve.frozen && !eve_grads.empty()) adam_step(model_.eve, eve_grads, eve_state, lr);

        trace.push_back({global_step_++, phase_id, loss_scalar});
    }
    return trace;
}

std::vector<LossTraceEntry> Trainer::run_phase(const PhaseConfig& phase, const Schedule& schedule,
                                               RngStream& rng) {
    validate_phase(phase);
    if (phase.phase_id != completed_phases_ + 1)
        throw StateError("run_phase: phase " + std::to_string(phase.phase_id) + " requested after phase " +
                         std::to_string(completed_phases_) + "; phases must run in order 1-4");
    if (phase.phase_id == 3 && !clusters_)
        throw StateError("run_phase: phase 3 requires set_equalization() first");

    std::vector<LossTraceEntry> trace;
    if (phase.loss_kind == LossKind::joint_refresh) {
        // Bob first, then Eve, each against the frozen rest.
        trace = train_steps(phase.phase_id, StepLoss::bob_ce, {true, false, true}, phase.steps, schedule,
                            phase.alpha, phase.bob_snr_db, phase.eve_extra_snr_db, rng);
        auto eve_trace = train_steps(phase.phase_id, StepLoss::eve_ce, {true, true, false}, phase.steps,
                                     schedule, phase.alpha, phase.bob_snr_db, phase.eve_extra_snr_db, rng);
        trace.insert(trace.end(), eve_trace.begin(), eve_trace.end());
    } else {
        const StepLoss kind = phase.loss_kind == LossKind::bob_ce    ? StepLoss::bob_ce
                              : phase.loss_kind == LossKind::eve_ce ? StepLoss::eve_ce
                                                                    : StepLoss::security;
        trace = train_steps(phase.phase_id, kind, phase.freeze, phase.steps, schedule, phase.alpha,
                            phase.bob_snr_db, phase.eve_extra_snr_db, rng);
    }
    completed_phases_ = phase.phase_id;
    return trace;
}

std::vector<LossTraceEntry> Trainer::run_naive_diagnostic(int steps, const Schedule& schedule,
                                                          double bob_snr_db, double eve_extra_snr_db,
                                                          RngStream& rng) {
    if (steps <= 0) throw ParamError("run_naive_diagnostic: steps must be positive");
    return train_steps(0, StepLoss::naive, {false, false, true}, steps, schedule, 0.0, bob_snr_db,
                       eve_extra_snr_db, rng);
}

PipelineResult run_full_pipeline(const PipelineOptions& options) {
    if (options.cluster_count <= 0 ||
        options.message_count % static_cast<std::size_t>(options.cluster_count) != 0)
        throw ParamError("run_full_pipeline: cluster count must divide message count");

    RngStream master(options.seed);
    RngStream init_rng = master.split(0);
    RngStream phase1_rng = master.split(1);
    RngStream phase2_rng = master.split(2);
    RngStream phase3_rng = master.split(3);
    RngStream phase4_rng = master.split(4);
    RngStream cluster_rng = master.split(5);

    ModelConfig mc{options.message_count, options.codeword_dim, options.normalization};
    Trainer trainer(make_wiretap_model(mc, init_rng));

    PipelineResult result;
    auto append = [&result](std::vector<LossTraceEntry> t) {
        result.trace.insert(result.trace.end(), t.begin(), t.end());
    };

    append(trainer.run_phase(make_phase_config(1, options.phase1_steps, options.alpha, options.bob_snr_db,
                                               options.eve_extra_snr_db),
                             options.schedule, phase1_rng));
    result.phase1_codebook = extract_codebook(trainer.model());

    append(trainer.run_phase(make_phase_config(2, options.phase2_steps, options.alpha, options.bob_snr_db,
                                               options.eve_extra_snr_db),
                             options.schedule, phase2_rng));
    result.pre_security_model = trainer.model();

    result.clusters = balanced_kmeans(result.phase1_codebook.codewords, options.cluster_count, cluster_rng);
    trainer.set_equalization(result.clusters);

    append(trainer.run_phase(make_phase_config(3, options.phase3_steps, options.alpha, options.bob_snr_db,
                                               options.eve_extra_snr_db),
                             options.schedule, phase3_rng));
    append(trainer.run_phase(make_phase_config(4, options.phase4_steps, options.alpha, options.bob_snr_db,
                                               options.eve_extra_snr_db),
                             options.schedule, phase4_rng));

    result.final_model = trainer.model();
    result.final_codebook = extract_codebook(result.final_model);
    return result;
}

}  // namespace wiretap
