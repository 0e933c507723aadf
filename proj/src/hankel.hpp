#ifndef HVAF_HANKEL_HPP
#define HVAF_HANKEL_HPP

#include <Eigen/Core>
#include <complex>

namespace hvaf {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dimensions of the Hankel lift of a length rows+cols-1 vector.
struct HankelShape {
    Index rows = 0;
    Index cols = 0;

    Index signal_length() const { return rows + cols - 1; }
    bool operator==(const HankelShape&) const = default;
};

/// Square (odd n) or near-square (even n) shape for a length-n signal:
/// rows = floor(n/2) + 1, cols = n + 1 - rows.
HankelShape default_square_shape(Index n);

/// Lift a vector to the Hankel matrix out[i][j] = x[i+j] (0-based).
Matrix hankelize(const Eigen::Ref<const Vector>& x, HankelShape shape);
void hankelize_into(const Eigen::Ref<const Vector>& x, Matrix& out);

/// Adjoint of the lift: anti-diagonal sums, out[k] = sum_{i+j=k} X[i][j].
Vector hankel_adjoint(const Eigen::Ref<const Matrix>& x);
void hankel_adjoint_into(const Eigen::Ref<const Matrix>& x, Vector& out);

/// Number of entries on each anti-diagonal; the diagonal of the composed
/// operator adjoint-after-lift. Symmetric, peaks at min(rows, cols).
RealVector antidiag_weights(HankelShape shape);

/// Moore-Penrose pseudoinverse of the lift: anti-diagonal averaging.
/// Left inverse of hankelize.
Vector hankel_pinv(const Eigen::Ref<const Matrix>& x);

/// r-th column (1-based), and its adjoint: a matrix with x in column r and
/// zeros elsewhere. Composing embed after select zeroes all other columns.
Vector select_column(const Eigen::Ref<const Matrix>& x, Index r);
Matrix embed_column(const Eigen::Ref<const Vector>& x, Index r, Index width);

}  // namespace hvaf

#endif
