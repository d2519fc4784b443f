#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gclust {

/// Dense square matrix, row-major. Only what point groups need.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
    Matrix(std::size_t dim, std::vector<double> row_major);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    std::span<const double> data() const { return data_; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;

    /// out = M x; out and x must have length dim() and must not alias.
    void apply(std::span<const double> x, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// max |M^T M - I| over entries.
    double orthogonality_defect() const;
    double max_abs_diff(const Matrix& other) const;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

}  // namespace gclust
