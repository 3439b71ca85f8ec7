#include "wiretap/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

DenseLayer make_dense(std::size_t in_dim, std::size_t out_dim, Activation activation, RngStream& rng) {
    DenseLayer layer;
    layer.weights = Matrix(out_dim, in_dim);
    layer.bias.assign(out_dim, 0.0);
    layer.activation = activation;
    const double limit = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    for (std::size_t i = 0; i < layer.weights.size(); ++i)
        layer.weights.storage()[i] = (2.0 * rng.uniform() - 1.0) * limit;
    return layer;
}

namespace {

void apply_activation(Activation act, Matrix& m) {
    if (act == Activation::relu)
        for (double& v : m.storage()) v = std::max(0.0, v);
}

}  // namespace

std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& input) {
    if (input.size() != layer.in_dim())
        throw ShapeError("dense_forward: input length " + std::to_string(input.size()) +
                         " does not match in_dim " + std::to_string(layer.in_dim()));
    std::vector<double> out(layer.out_dim());
    for (std::size_t i = 0; i < layer.out_dim(); ++i) {
        double acc = layer.bias[i];
        for (std::size_t j = 0; j < layer.in_dim(); ++j) acc += layer.weights(i, j) * input[j];
        out[i] = layer.activation == Activation::relu ? std::max(0.0, acc) : acc;
    }
    return out;
}

Matrix dense_forward_batch(const DenseLayer& layer, const Matrix& input) {
    if (input.cols() != layer.in_dim())
        throw ShapeError("dense_forward_batch: input width " + std::to_string(input.cols()) +
                         " does not match in_dim " + std::to_string(layer.in_dim()));
    Matrix out = matmul_bt(input, layer.weights);
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += layer.bias[c];
    apply_activation(layer.activation, out);
    return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
    for (double v : logits)
        if (!std::isfinite(v)) throw NumericError("softmax: non-finite logit");
    // Max subtraction keeps exp() in range for large logits.
    const double m = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - m);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

Matrix softmax_rows(const Matrix& logits) {
    if (!logits.all_finite()) throw NumericError("softmax_rows: non-finite logit");
    Matrix out(logits.rows(), logits.cols());
    for (std::size_t r = 0; r < logits.rows(); ++r) {
        double m = logits(r, 0);
        for (std::size_t c = 1; c < logits.cols(); ++c) m = std::max(m, logits(r, c));
        double sum = 0.0;
        for (std::size_t c = 0; c < logits.cols(); ++c) {
            out(r, c) = std::exp(logits(r, c) - m);
            sum += out(r, c);
        }
        for (std::size_t c = 0; c < logits.cols(); ++c) out(r, c) /= sum;
    }
    return out;
}

Matrix softmax_backward(const Matrix& probs, const Matrix& prob_grad) {
    if (!same_shape(probs, prob_grad)) throw ShapeError("softmax_backward: shapes disagree");
    Matrix dlogits(probs.rows(), probs.cols());
    for (std::size_t r = 0; r < probs.rows(); ++r) {
        double dot = 0.0;
        for (std::size_t c = 0; c < probs.cols(); ++c) dot += prob_grad(r, c) * probs(r, c);
        for (std::size_t c = 0; c < probs.cols(); ++c)
            dlogits(r, c) = probs(r, c) * (prob_grad(r, c) - dot);
    }
    return dlogits;
}

std::size_t LayerStack::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.bias.size();
    return n;
}

Matrix stack_forward(const LayerStack& stack, const Matrix& input) {
    Matrix x = input;
    for (const auto& layer : stack.layers) x = dense_forward_batch(layer, x);
    return x;
}

Matrix stack_forward(const LayerStack& stack, const Matrix& input, Tape& tape) {
    tape.inputs.clear();
    tape.preacts.clear();
    Matrix x = input;
    for (const auto& layer : stack.layers) {
        if (x.cols() != layer.in_dim()) throw ShapeError("stack_forward: layer input width mismatch");
        tape.inputs.push_back(x);
        Matrix z = matmul_bt(x, layer.weights);
        for (std::size_t r = 0; r < z.rows(); ++r)
            for (std::size_t c = 0; c < z.cols(); ++c) z(r, c) += layer.bias[c];
        tape.preacts.push_back(z);
        apply_activation(layer.activation, z);
        x = std::move(z);
    }
    tape.recorded = true;
    return x;
}

Matrix stack_backward(const LayerStack& stack, const Tape& tape, const Matrix& output_grad, StackGrads& grads) {
    if (!tape.recorded) throw StateError("stack_backward: no recorded forward pass");
    if (tape.inputs.size() != stack.layers.size())
        throw StateError("stack_backward: tape does not match stack layout");
    grads.layers.clear();
    if (!stack.frozen) grads.layers.resize(stack.layers.size());

    Matrix grad = output_grad;
    for (std::size_t li = stack.layers.size(); li-- > 0;) {
        const DenseLayer& layer = stack.layers[li];
        const Matrix& preact = tape.preacts[li];
        if (!same_shape(grad, preact)) throw ShapeError("stack_backward: gradient shape mismatch");

        Matrix dz = grad;
        if (layer.activation == Activation::relu) {
            for (std::size_t i = 0; i < dz.size(); ++i)
                if (preact.storage()[i] <= 0.0) dz.storage()[i] = 0.0;
        }
        if (!stack.frozen) {
            grads.layers[li].weights = matmul_at(dz, tape.inputs[li]);  // dW = dZ^T X
            grads.layers[li].bias.assign(layer.out_dim(), 0.0);
            for (std::size_t r = 0; r < dz.rows(); ++r)
                for (std::size_t c = 0; c < dz.cols(); ++c) grads.layers[li].bias[c] += dz(r, c);
        }
        grad = matmul(dz, layer.weights);  // dX = dZ W
    }
    return grad;
}

AdamState make_adam_state(const LayerStack& stack) {
    AdamState state;
    for (const auto& layer : stack.layers) {
        LayerGrads zero;
        zero.weights = Matrix(layer.weights.rows(), layer.weights.cols());
        zero.bias.assign(layer.bias.size(), 0.0);
        state.first_moment.push_back(zero);
        state.second_moment.push_back(zero);
    }
    return state;
}

void adam_step(LayerStack& stack, const StackGrads& grads, AdamState& state, double learning_rate) {
    if (!(learning_rate > 0.0)) throw ParamError("adam_step: learning rate must be positive");
    if (stack.frozen) return;
    if (grads.layers.size() != stack.layers.size())
        throw ShapeError("adam_step: gradient set does not match stack layout");
    if (state.first_moment.size() != stack.layers.size())
        throw ShapeError("adam_step: optimizer state does not match stack layout");

    state.step_count += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));

    for (std::size_t li = 0; li < stack.layers.size(); ++li) {
        DenseLayer& layer = stack.layers[li];
        const LayerGrads& g = grads.layers[li];
        LayerGrads& m = state.first_moment[li];
        LayerGrads& v = state.second_moment[li];
        if (!same_shape(g.weights, layer.weights) || g.bias.size() != layer.bias.size())
            throw ShapeError("adam_step: gradient shape mismatch at layer " + std::to_string(li));

        auto update = [&](double& param, double grad, double& m1, double& m2) {
            m1 = state.beta1 * m1 + (1.0 - state.beta1) * grad;
            m2 = state.beta2 * m2 + (1.0 - state.beta2) * grad * grad;
            const double mhat = m1 / bc1;
            const double vhat = m2 / bc2;
            param -= learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
        };

        for (std::size_t i = 0; i < layer.weights.size(); ++i)
            update(layer.weights.storage()[i], g.weights.storage()[i], m.weights.storage()[i],
                   v.weights.storage()[i]);
        for (std::size_t i = 0; i < layer.bias.size(); ++i)
            update(layer.bias[i], g.bias[i], m.bias[i], v.bias[i]);
    }
}

}  // namespace wiretap
