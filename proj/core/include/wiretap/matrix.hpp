#pragma once

#include <cstddef>
#include <vector>

namespace wiretap {

// Row-major dense matrix of doubles. In batch contexts rows are samples.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& storage() { return data_; }
    const std::vector<double>& storage() const { return data_; }

    std::vector<double> row(std::size_t r) const;
    void set_row(std::size_t r, const std::vector<double>& values);

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

bool same_shape(const Matrix& a, const Matrix& b);

// a (r x k) * b (k x c)
Matrix matmul(const Matrix& a, const Matrix& b);
// a (r x k) * b^T where b is (c x k)
Matrix matmul_bt(const Matrix& a, const Matrix& b);
// a^T * b where a is (k x r), b is (k x c)
Matrix matmul_at(const Matrix& a, const Matrix& b);

Matrix add(const Matrix& a, const Matrix& b);
double squared_row_norm(const Matrix& m, std::size_t r);
double euclidean_distance(const Matrix& a, std::size_t ra, const Matrix& b, std::size_t rb);

}  // namespace wiretap
