#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/losses.hpp"
#include "wiretap/model.hpp"
#include "wiretap/nn.hpp"

namespace wiretap::test {

// Central finite differences over every parameter of the given stacks.
// loss() must be a deterministic function of the current parameters.
struct FdReport {
    double max_rel_err = 0.0;
    std::size_t checked = 0;
};

inline double fd_rel_err(double analytic, double numeric) {
    const double diff = std::fabs(analytic - numeric);
    if (diff < 1e-7) return 0.0;  // below the h=1e-5 noise floor
    return diff / std::max(std::fabs(analytic), std::fabs(numeric));
}

inline FdReport finite_difference_check(std::vector<LayerStack*> stacks,
                                        const std::vector<const StackGrads*>& analytic,
                                        const std::function<double()>& loss, double h = 1e-5) {
    FdReport report;
    for (std::size_t si = 0; si < stacks.size(); ++si) {
        LayerStack& stack = *stacks[si];
        const StackGrads& grads = *analytic[si];
        for (std::size_t li = 0; li < stack.layers.size(); ++li) {
            auto probe = [&](double& param, double g) {
                const double saved = param;
                param = saved + h;
                const double up = loss();
                param = saved - h;
                const double down = loss();
                param = saved;
                const double numeric = (up - down) / (2.0 * h);
                report.max_rel_err = std::max(report.max_rel_err, fd_rel_err(g, numeric));
                report.checked += 1;
            };
            DenseLayer& layer = stack.layers[li];
            for (std::size_t i = 0; i < layer.weights.size(); ++i)
                probe(layer.weights.storage()[i], grads.layers[li].weights.storage()[i]);
            for (std::size_t i = 0; i < layer.bias.size(); ++i)
                probe(layer.bias[i], grads.layers[li].bias[i]);
        }
    }
    return report;
}

// 16 messages on the radius-sqrt(2) circle with matched inner-product
// decoders. Decodes perfectly in the vanishing-noise limit.
inline WiretapModel handcrafted_model_16x2() {
    const std::size_t m = 16;
    WiretapModel model;
    model.message_count = m;
    model.codeword_dim = 2;
    model.normalization = Normalization::per_symbol;

    Matrix codewords(m, 2);
    for (std::size_t k = 0; k < m; ++k) {
        const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
        codewords(k, 0) = std::sqrt(2.0) * std::cos(angle);
        codewords(k, 1) = std::sqrt(2.0) * std::sin(angle);
    }

    DenseLayer enc1;
    enc1.weights = Matrix::identity(m);
    enc1.bias.assign(m, 0.0);
    enc1.activation = Activation::relu;

    DenseLayer enc2;  // columns are the codewords
    enc2.weights = Matrix(2, m);
    for (std::size_t k = 0; k < m; ++k) {
        enc2.weights(0, k) = codewords(k, 0);
        enc2.weights(1, k) = codewords(k, 1);
    }
    enc2.bias.assign(2, 0.0);
    enc2.activation = Activation::linear;
    model.encoder.layers = {enc1, enc2};

    DenseLayer dec1;  // rows are the codewords; inner-product scoring
    dec1.weights = codewords;
    dec1.bias.assign(m, 0.0);
    dec1.activation = Activation::relu;

    DenseLayer dec2;
    dec2.weights = Matrix::identity(m);
    dec2.bias.assign(m, 0.0);
    dec2.activation = Activation::linear;

    model.bob.layers = {dec1, dec2};
    model.eve.layers = {dec1, dec2};
    return model;
}

// End-to-end training graph with the noise realization held fixed, so the
// loss is a deterministic function of the parameters and finite differences
// are well defined. Mirrors the trainer's forward/backward wiring.
struct FixedNoiseGraph {
    WiretapModel* model = nullptr;
    Matrix s;          // one-hot batch
    Matrix bob_noise;  // batch x n, pre-drawn
    Matrix eve_noise;
    Matrix equalized;  // soft labels for the security loss
    double alpha = 0.7;
    bool use_security = false;  // false: Bob cross-entropy only

    double loss() const {
        const Matrix pre = stack_forward(model->encoder, s);
        const Matrix x = normalize(pre, model->normalization, model->codeword_dim);
        const Matrix y = add(x, bob_noise);
        const Matrix pb = softmax_rows(stack_forward(model->bob, y));
        if (!use_security) return cross_entropy(s, pb).scalar;
        const Matrix z = add(y, eve_noise);
        const Matrix pe = softmax_rows(stack_forward(model->eve, z));
        return security_loss(s, equalized, pb, pe, alpha).scalar;
    }

    void gradients(StackGrads& enc_grads, StackGrads& bob_grads, StackGrads& eve_grads) const {
        Tape enc_tape, bob_tape, eve_tape;
        const Matrix pre = stack_forward(model->encoder, s, enc_tape);
        const Matrix x = normalize(pre, model->normalization, model->codeword_dim);
        const Matrix y = add(x, bob_noise);
        const Matrix pb = softmax_rows(stack_forward(model->bob, y, bob_tape));

        Matrix dx(x.rows(), x.cols());
        if (!use_security) {
            const Matrix dprob = cross_entropy_grad(s, pb);
            dx = add(dx, stack_backward(model->bob, bob_tape, softmax_backward(pb, dprob), bob_grads));
            eve_grads.layers.clear();
        } else {
            const Matrix z = add(y, eve_noise);
            const Matrix pe = softmax_rows(stack_forward(model->eve, z, eve_tape));
            const SecurityLossGrads g = security_loss_grads(s, equalized, pb, pe, alpha);
            dx = add(dx, stack_backward(model->bob, bob_tape, softmax_backward(pb, g.bob), bob_grads));
            dx = add(dx, stack_backward(model->eve, eve_tape, softmax_backward(pe, g.eve), eve_grads));
        }
        const Matrix dpre = normalize_backward(pre, model->normalization, model->codeword_dim, dx);
        stack_backward(model->encoder, enc_tape, dpre, enc_grads);
    }
};

inline bool stacks_bitwise_equal(const LayerStack& a, const LayerStack& b) {
    if (a.layers.size() != b.layers.size()) return false;
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        if (a.layers[i].weights.storage() != b.layers[i].weights.storage()) return false;
        if (a.layers[i].bias != b.layers[i].bias) return false;
    }
    return true;
}

inline bool models_bitwise_equal(const WiretapModel& a, const WiretapModel& b) {
    return stacks_bitwise_equal(a.encoder, b.encoder) && stacks_bitwise_equal(a.bob, b.bob) &&
           stacks_bitwise_equal(a.eve, b.eve);
}

}  // namespace wiretap::test
