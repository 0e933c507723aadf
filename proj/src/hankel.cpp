#include "hankel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hvaf {

HankelShape default_square_shape(Index n) {
    if (n < 1) {
        throw std::invalid_argument("default_square_shape: signal length must be positive, got " +
                                    std::to_string(n));
    }
    const Index rows = n / 2 + 1;
    return {rows, n + 1 - rows};
}

Matrix hankelize(const Eigen::Ref<const Vector>& x, HankelShape shape) {
    if (shape.rows < 1 || shape.cols < 1 || x.size() != shape.signal_length()) {
        throw std::invalid_argument("hankelize: vector of length " + std::to_string(x.size()) +
                                    " does not fit shape " + std::to_string(shape.rows) + "x" +
                                    std::to_string(shape.cols));
    }
    Matrix out(shape.rows, shape.cols);
    hankelize_into(x, out);
    return out;
}

void hankelize_into(const Eigen::Ref<const Vector>& x, Matrix& out) {
    const Index rows = out.rows();
    const Index cols = out.cols();
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            out(i, j) = x(i + j);
        }
    }
}

Vector hankel_adjoint(const Eigen::Ref<const Matrix>& x) {
    if (x.rows() < 1 || x.cols() < 1) {
        throw std::invalid_argument("hankel_adjoint: empty matrix");
    }
    Vector out(x.rows() + x.cols() - 1);
    hankel_adjoint_into(x, out);
    return out;
}

void hankel_adjoint_into(const Eigen::Ref<const Matrix>& x, Vector& out) {
    out.setZero();
    for (Index j = 0; j < x.cols(); ++j) {
        for (Index i = 0; i < x.rows(); ++i) {
            out(i + j) += x(i, j);
        }
    }
}

RealVector antidiag_weights(HankelShape shape) {
    if (shape.rows < 1 || shape.cols < 1) {
        throw std::invalid_argument("antidiag_weights: invalid shape");
    }
    const Index n = shape.signal_length();
    RealVector w(n);
    for (Index k = 0; k < n; ++k) {
        w(k) = static_cast<double>(
            std::min({k + 1, shape.rows, shape.cols, n - k}));
    }
    return w;
}

Vector hankel_pinv(const Eigen::Ref<const Matrix>& x) {
    Vector out = hankel_adjoint(x);
    const RealVector w = antidiag_weights({x.rows(), x.cols()});
    out.array() /= w.array();
    return out;
}

Vector select_column(const Eigen::Ref<const Matrix>& x, Index r) {
    if (r < 1 || r > x.cols()) {
        throw std::out_of_range("select_column: column " + std::to_string(r) +
                                " out of range 1.." + std::to_string(x.cols()));
    }
    return x.col(r - 1);
}

Matrix embed_column(const Eigen::Ref<const Vector>& x, Index r, Index width) {
    if (r < 1 || r > width) {
        throw std::out_of_range("embed_column: column " + std::to_string(r) +
                                " out of range 1.." + std::to_string(width));
    }
    Matrix out = Matrix::Zero(x.size(), width);
    out.col(r - 1) = x;
    return out;
}

}  // namespace hvaf
