#include "wiretap/losses.hpp"

#include <algorithm>
#include <cmath>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

void check_pair(const Matrix& targets, const Matrix& predictions, const char* who) {
    if (!same_shape(targets, predictions))
        throw ShapeError(std::string(who) + ": target and prediction shapes disagree");
    if (targets.rows() == 0) throw ShapeError(std::string(who) + ": empty batch");
}

}  // namespace

LossValue cross_entropy(const Matrix& targets, const Matrix& predictions) {
    check_pair(targets, predictions, "cross_entropy");
    LossValue loss;
    loss.per_sample.resize(targets.rows());
    double total = 0.0;
    for (std::size_t r = 0; r < targets.rows(); ++r) {
        double h = 0.0;
        for (std::size_t c = 0; c < targets.cols(); ++c) {
            const double t = targets(r, c);
            if (t != 0.0) h -= t * std::log(std::max(predictions(r, c), kLogClamp));
        }
        loss.per_sample[r] = h;
        total += h;
    }
    loss.scalar = total / static_cast<double>(targets.rows());
    return loss;
}

Matrix cross_entropy_grad(const Matrix& targets, const Matrix& predictions) {
    check_pair(targets, predictions, "cross_entropy_grad");
    Matrix grad(targets.rows(), targets.cols());
    const double inv_batch = 1.0 / static_cast<double>(targets.rows());
    for (std::size_t r = 0; r < targets.rows(); ++r) {
        for (std::size_t c = 0; c < targets.cols(); ++c) {
            const double t = targets(r, c);
            if (t == 0.0) continue;
            if (predictions(r, c) > kLogClamp) grad(r, c) = -t / predictions(r, c) * inv_batch;
            // clamped region: flat, gradient zero
        }
    }
    return grad;
}

LossValue naive_difference_loss(const Matrix& targets, const Matrix& bob_probs, const Matrix& eve_probs) {
    LossValue bob = cross_entropy(targets, bob_probs);
    LossValue eve = cross_entropy(targets, eve_probs);
    LossValue out;
    out.per_sample.resize(bob.per_sample.size());
    for (std::size_t i = 0; i < out.per_sample.size(); ++i)
        out.per_sample[i] = bob.per_sample[i] - eve.per_sample[i];
    out.scalar = bob.scalar - eve.scalar;
    return out;
}

NaiveLossGrads naive_difference_loss_grads(const Matrix& targets, const Matrix& bob_probs,
                                           const Matrix& eve_probs) {
    NaiveLossGrads grads;
    grads.bob = cross_entropy_grad(targets, bob_probs);
    grads.eve = cross_entropy_grad(targets, eve_probs);
    for (double& v : grads.eve.storage()) v = -v;
    return grads;
}

LossValue security_loss(const Matrix& targets, const Matrix& equalized_targets, const Matrix& bob_probs,
                        const Matrix& eve_probs, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParamError("security_loss: alpha must lie in [0, 1]");
    LossValue bob = cross_entropy(targets, bob_probs);
    LossValue eve = cross_entropy(equalized_targets, eve_probs);
    LossValue out;
    out.per_sample.resize(bob.per_sample.size());
    for (std::size_t i = 0; i < out.per_sample.size(); ++i)
        out.per_sample[i] = (1.0 - alpha) * bob.per_sample[i] + alpha * eve.per_sample[i];
    out.scalar = (1.0 - alpha) * bob.scalar + alpha * eve.scalar;
    return out;
}

SecurityLossGrads security_loss_grads(const Matrix& targets, const Matrix& equalized_targets,
                                      const Matrix& bob_probs, const Matrix& eve_probs, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParamError("security_loss_grads: alpha must lie in [0, 1]");
    SecurityLossGrads grads;
    grads.bob = cross_entropy_grad(targets, bob_probs);
    for (double& v : grads.bob.storage()) v *= (1.0 - alpha);
    grads.eve = cross_entropy_grad(equalized_targets, eve_probs);
    for (double& v : grads.eve.storage()) v *= alpha;
    return grads;
}

}  // namespace wiretap
