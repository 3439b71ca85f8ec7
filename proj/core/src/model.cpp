#include "wiretap/model.hpp"

#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

void WiretapModel::apply_freeze(const FreezeMask& mask) {
    encoder.frozen = mask.encoder_frozen;
    bob.frozen = mask.bob_frozen;
    eve.frozen = mask.eve_frozen;
}

WiretapModel make_wiretap_model(const ModelConfig& config, RngStream& rng) {
    if (config.message_count < 2) throw ParamError("make_wiretap_model: need at least 2 messages");
    if (config.codeword_dim < 1) throw ParamError("make_wiretap_model: codeword_dim must be positive");
    WiretapModel model;
    model.message_count = config.message_count;
    model.codeword_dim = config.codeword_dim;
    model.normalization = config.normalization;
    const std::size_t m = config.message_count;
    const std::size_t n = config.codeword_dim;
    model.encoder.layers.push_back(make_dense(m, m, Activation::relu, rng));
    model.encoder.layers.push_back(make_dense(m, n, Activation::linear, rng));
    model.bob.layers.push_back(make_dense(n, m, Activation::relu, rng));
    model.bob.layers.push_back(make_dense(m, m, Activation::linear, rng));
    model.eve.layers.push_back(make_dense(n, m, Activation::relu, rng));
    model.eve.layers.push_back(make_dense(m, m, Activation::linear, rng));
    return model;
}

bool decoders_structurally_identical(const WiretapModel& model) {
    if (model.bob.layers.size() != model.eve.layers.size()) return false;
    for (std::size_t i = 0; i < model.bob.layers.size(); ++i) {
        const auto& a = model.bob.layers[i];
        const auto& b = model.eve.layers[i];
        if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim() || a.activation != b.activation)
            return false;
    }
    return true;
}

Matrix one_hot(const std::vector<int>& messages, std::size_t message_count) {
    Matrix s(messages.size(), message_count);
    for (std::size_t r = 0; r < messages.size(); ++r) {
        const int m = messages[r];
        if (m < 0 || static_cast<std::size_t>(m) >= message_count)
            throw ParamError("one_hot: message index " + std::to_string(m) + " out of range");
        s(r, static_cast<std::size_t>(m)) = 1.0;
    }
    return s;
}

Matrix normalize_per_symbol(const Matrix& x, std::size_t n) {
    Matrix out = x;
    const double target = static_cast<double>(n);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double sq = squared_row_norm(x, r);
        if (sq <= 0.0)
            throw NumericError("normalize_per_symbol: zero codeword row " + std::to_string(r));
        const double scale = std::sqrt(target / sq);
        for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = x(r, c) * scale;
    }
    return out;
}

Matrix normalize_batch_average(const Matrix& x, std::size_t n) {
    double total = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) total += squared_row_norm(x, r);
    if (total <= 0.0) throw NumericError("normalize_batch_average: all-zero batch");
    const double scale = std::sqrt(static_cast<double>(n) * static_cast<double>(x.rows()) / total);
    Matrix out = x;
    for (double& v : out.storage()) v *= scale;
    return out;
}

Matrix normalize(const Matrix& x, Normalization mode, std::size_t n) {
    return mode == Normalization::per_symbol ? normalize_per_symbol(x, n) : normalize_batch_average(x, n);
}

Matrix normalize_backward(const Matrix& input, Normalization mode, std::size_t n, const Matrix& output_grad) {
    if (!same_shape(input, output_grad)) throw ShapeError("normalize_backward: shapes disagree");
    const double target = static_cast<double>(n);
    Matrix grad(input.rows(), input.cols());
    if (mode == Normalization::per_symbol) {
        // y = sqrt(n) x / |x|; dL/dx = sqrt(n)/|x| (g - (g.x) x / |x|^2)
        for (std::size_t r = 0; r < input.rows(); ++r) {
            const double sq = squared_row_norm(input, r);
            if (sq <= 0.0) throw NumericError("normalize_backward: zero codeword row");
            const double norm = std::sqrt(sq);
            double dot = 0.0;
            for (std::size_t c = 0; c < input.cols(); ++c) dot += output_grad(r, c) * input(r, c);
            const double k = std::sqrt(target) / norm;
            for (std::size_t c = 0; c < input.cols(); ++c)
                grad(r, c) = k * (output_grad(r, c) - dot * input(r, c) / sq);
        }
    } else {
        // y = c x with c = sqrt(nN/T), T = sum of squares;
        // dL/dx = c g - c (sum g.x) x / T
        double total = 0.0;
        for (std::size_t r = 0; r < input.rows(); ++r) total += squared_row_norm(input, r);
        if (total <= 0.0) throw NumericError("normalize_backward: all-zero batch");
        const double c = std::sqrt(target * static_cast<double>(input.rows()) / total);
        double dot = 0.0;
        for (std::size_t i = 0; i < input.size(); ++i)
            dot += output_grad.storage()[i] * input.storage()[i];
        for (std::size_t i = 0; i < input.size(); ++i)
            grad.storage()[i] = c * output_grad.storage()[i] - c * dot * input.storage()[i] / total;
    }
    return grad;
}

Matrix encode_onehot(const WiretapModel& model, const Matrix& s) {
    if (s.cols() != model.message_count) throw ShapeError("encode_onehot: one-hot width mismatch");
    return normalize(stack_forward(model.encoder, s), model.normalization, model.codeword_dim);
}

Matrix encode_messages(const WiretapModel& model, const std::vector<int>& messages) {
    return encode_onehot(model, one_hot(messages, model.message_count));
}

Codebook extract_codebook(const WiretapModel& model) {
    Codebook book;
    book.normalization = model.normalization;
    book.channel_uses = model.codeword_dim;
    book.message_count = model.message_count;
    book.codewords = encode_onehot(model, Matrix::identity(model.message_count));
    return book;
}

Matrix decode(const LayerStack& decoder, const Matrix& received) {
    return softmax_rows(stack_forward(decoder, received));
}

std::vector<int> argmax_rows(const Matrix& probs) {
    std::vector<int> out(probs.rows());
    for (std::size_t r = 0; r < probs.rows(); ++r) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < probs.cols(); ++c)
            if (probs(r, c) > probs(r, best)) best = c;
        out[r] = static_cast<int>(best);
    }
    return out;
}

}  // namespace wiretap
