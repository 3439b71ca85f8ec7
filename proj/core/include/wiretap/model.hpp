#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/matrix.hpp"
#include "wiretap/nn.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

enum class Normalization { batch_average, per_symbol };

// The learned constellation: one codeword per message, power-normalized.
struct Codebook {
    Matrix codewords;  // message_count x channel_uses
    Normalization normalization = Normalization::batch_average;
    std::size_t channel_uses = 0;
    std::size_t message_count = 0;
};

struct ModelConfig {
    std::size_t message_count = 16;
    std::size_t codeword_dim = 2;
    Normalization normalization = Normalization::batch_average;
};

// End-to-end architecture: one-hot input, two-layer dense encoder with
// power normalization, and two structurally identical two-layer decoders
// ending in a softmax.
struct WiretapModel {
    std::size_t message_count = 0;
    std::size_t codeword_dim = 0;
    Normalization normalization = Normalization::batch_average;
    LayerStack encoder;  // M -> M relu, M -> n linear
    LayerStack bob;      // n -> M relu, M -> M linear, softmax on top
    LayerStack eve;      // same shape as bob

    void apply_freeze(const FreezeMask& mask);
};

WiretapModel make_wiretap_model(const ModelConfig& config, RngStream& rng);

// Decoders must have identical layer shapes.
bool decoders_structurally_identical(const WiretapModel& model);

// One row per message, exactly one 1 per row.
Matrix one_hot(const std::vector<int>& messages, std::size_t message_count);

// Scale each row to squared norm exactly n. Zero rows are degenerate.
Matrix normalize_per_symbol(const Matrix& x, std::size_t n);

// Scale the whole batch by one scalar so the mean squared row norm is
// exactly n. Preserves all pairwise distance ratios.
Matrix normalize_batch_average(const Matrix& x, std::size_t n);

Matrix normalize(const Matrix& x, Normalization mode, std::size_t n);

// Backward through the normalization given the pre-normalization input.
Matrix normalize_backward(const Matrix& input, Normalization mode, std::size_t n, const Matrix& output_grad);

// messages -> one-hot -> encoder -> normalization. Pure and deterministic.
Matrix encode_messages(const WiretapModel& model, const std::vector<int>& messages);
Matrix encode_onehot(const WiretapModel& model, const Matrix& s);

// Feeds the identity batch through the encoder. In batch_average mode the
// extracted codebook is re-normalized over the full message set so the
// published constellation meets the power constraint exactly.
Codebook extract_codebook(const WiretapModel& model);

// received batch -> decoder stack -> softmax probability rows.
Matrix decode(const LayerStack& decoder, const Matrix& received);

// Hard decisions; ties broken by lowest index.
std::vector<int> argmax_rows(const Matrix& probs);

}  // namespace wiretap
