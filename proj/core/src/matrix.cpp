#include "wiretap/matrix.hpp"

#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> Matrix::row(std::size_t r) const {
    return std::vector<double>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_row(std::size_t r, const std::vector<double>& values) {
    if (values.size() != cols_) throw ShapeError("set_row: value count does not match column count");
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = values[c];
}

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

bool same_shape(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
}

namespace {
std::string shape_str(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}
}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: inner dimensions disagree (" + shape_str(a) + " * " + shape_str(b) + ")");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw ShapeError("matmul_bt: inner dimensions disagree (" + shape_str(a) + " * " + shape_str(b) + "^T)");
    Matrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(j, k);
            out(i, j) = acc;
        }
    }
    return out;
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("matmul_at: inner dimensions disagree (" + shape_str(a) + "^T * " + shape_str(b) + ")");
    Matrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = a(k, i);
            if (aki == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aki * b(k, j);
        }
    }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (!same_shape(a, b)) throw ShapeError("add: shapes disagree (" + shape_str(a) + " + " + shape_str(b) + ")");
    Matrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.storage()[i] += b.storage()[i];
    return out;
}

double squared_row_norm(const Matrix& m, std::size_t r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * m(r, c);
    return acc;
}

double euclidean_distance(const Matrix& a, std::size_t ra, const Matrix& b, std::size_t rb) {
    if (a.cols() != b.cols()) throw ShapeError("euclidean_distance: dimension mismatch");
    double acc = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        const double d = a(ra, c) - b(rb, c);
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace wiretap
