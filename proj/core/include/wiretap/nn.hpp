#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/matrix.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

enum class Activation { relu, linear };

struct DenseLayer {
    Matrix weights;             // out_dim x in_dim
    std::vector<double> bias;   // out_dim
    Activation activation = Activation::linear;

    std::size_t in_dim() const { return weights.cols(); }
    std::size_t out_dim() const { return weights.rows(); }
};

// Glorot-style uniform init on [-sqrt(6/(in+out)), +sqrt(6/(in+out))].
DenseLayer make_dense(std::size_t in_dim, std::size_t out_dim, Activation activation, RngStream& rng);

// activation(W * input + b) for a single sample.
std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& input);

// Batched: rows are samples, returns batch x out_dim.
Matrix dense_forward_batch(const DenseLayer& layer, const Matrix& input);

std::vector<double> softmax(const std::vector<double>& logits);
Matrix softmax_rows(const Matrix& logits);

// Given row-wise softmax outputs and the loss gradient w.r.t. them,
// returns the loss gradient w.r.t. the logits.
Matrix softmax_backward(const Matrix& probs, const Matrix& prob_grad);

// A block of dense layers applied in sequence. A frozen stack still
// propagates input gradients but contributes no parameter gradients and
// receives no optimizer updates.
struct LayerStack {
    std::vector<DenseLayer> layers;
    bool frozen = false;

    std::size_t parameter_count() const;
};

// Intermediate activations recorded by a training-mode forward pass.
struct Tape {
    std::vector<Matrix> inputs;    // input to each layer
    std::vector<Matrix> preacts;   // pre-activation output of each layer
    bool recorded = false;
};

struct LayerGrads {
    Matrix weights;
    std::vector<double> bias;
};

// Per-parameter gradients for one stack; empty for frozen stacks.
struct StackGrads {
    std::vector<LayerGrads> layers;
    bool empty() const { return layers.empty(); }
};

// Pure forward evaluation (no recording); safe to call concurrently.
Matrix stack_forward(const LayerStack& stack, const Matrix& input);

// Forward pass that records activations into the tape for backward().
Matrix stack_forward(const LayerStack& stack, const Matrix& input, Tape& tape);

// Reverse-mode pass. Requires a recorded tape. Fills grads for unfrozen
// stacks (cleared for frozen ones) and returns the gradient w.r.t. the
// stack input so enclosing graphs can keep propagating.
Matrix stack_backward(const LayerStack& stack, const Tape& tape, const Matrix& output_grad, StackGrads& grads);

struct FreezeMask {
    bool encoder_frozen = false;
    bool bob_frozen = false;
    bool eve_frozen = false;
};

struct AdamState {
    std::vector<LayerGrads> first_moment;
    std::vector<LayerGrads> second_moment;
    long step_count = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

AdamState make_adam_state(const LayerStack& stack);

// Standard bias-corrected Adam update. No-op on frozen stacks.
void adam_step(LayerStack& stack, const StackGrads& grads, AdamState& state, double learning_rate);

}  // namespace wiretap
