#include "gclust/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "gclust/error.hpp"

namespace gclust {

Matrix::Matrix(std::size_t dim, std::vector<double> row_major) : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorCode::InvalidMatrix, "expected " + std::to_string(dim_ * dim_) + " entries, got " +
                                                  std::to_string(data_.size()));
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.dim_ != dim_) throw Error(ErrorCode::ShapeError, "matrix dimension mismatch");
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = 0; k < dim_; ++k) {
            const double a = (*this)(r, k);
            for (std::size_t c = 0; c < dim_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

void Matrix::apply(std::span<const double> x, std::span<double> out) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * x[c];
        out[r] = acc;
    }
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    std::vector<double> out(dim_);
    apply(x, out);
    return out;
}

double Matrix::orthogonality_defect() const {
    const Matrix g = transpose() * (*this);
    return g.max_abs_diff(identity(dim_));
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (other.dim_ != dim_) throw Error(ErrorCode::ShapeError, "matrix dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

}  // namespace gclust
