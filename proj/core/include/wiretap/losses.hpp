#pragma once

#include <vector>

#include "wiretap/matrix.hpp"

namespace wiretap {

// Predictions are clamped to at least this value inside the log, so a
// perfectly confident wrong prediction stays finite during training.
inline constexpr double kLogClamp = 1e-12;

struct LossValue {
    double scalar = 0.0;                // mean of per_sample
    std::vector<double> per_sample;
};

// H(targets, predictions) per row: -sum_i t_i log max(p_i, clamp),
// averaged over the batch.
LossValue cross_entropy(const Matrix& targets, const Matrix& predictions);

// d(scalar)/d(predictions). Zero where the clamp is active.
Matrix cross_entropy_grad(const Matrix& targets, const Matrix& predictions);

// H(targets, bob) - H(targets, eve). Unbounded below; kept only as a
// diagnostic to demonstrate why it cannot train a secure encoder.
LossValue naive_difference_loss(const Matrix& targets, const Matrix& bob_probs, const Matrix& eve_probs);

struct NaiveLossGrads {
    Matrix bob;
    Matrix eve;
};
NaiveLossGrads naive_difference_loss_grads(const Matrix& targets, const Matrix& bob_probs,
                                           const Matrix& eve_probs);

// (1-alpha) H(targets, bob) + alpha H(equalized_targets, eve).
// Bounded below by 0 for alpha in [0, 1].
LossValue security_loss(const Matrix& targets, const Matrix& equalized_targets, const Matrix& bob_probs,
                        const Matrix& eve_probs, double alpha);

struct SecurityLossGrads {
    Matrix bob;
    Matrix eve;
};
SecurityLossGrads security_loss_grads(const Matrix& targets, const Matrix& equalized_targets,
                                      const Matrix& bob_probs, const Matrix& eve_probs, double alpha);

}  // namespace wiretap
