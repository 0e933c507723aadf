#ifndef HVAF_SVT_HPP
#define HVAF_SVT_HPP

#include <stdexcept>

#include "hankel.hpp"

namespace hvaf {

/// Raised when a dense factorization fails to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thin SVD a = u * diag(s) * vh with k = min(rows, cols) retained values.
/// vh is the conjugate-transposed right factor as LAPACK returns it.
struct Svd {
    Matrix u;                      // rows x k
    RealVector singular_values;    // k, descending
    Matrix vh;                     // k x cols
};

/// Computes the thin SVD via LAPACK (gesdd, falling back to gesvd).
/// Throws NumericError with the matrix dimensions if both fail.
Svd thin_svd(Matrix a);

/// Proximal operator of the nuclear norm: replaces each singular value s
/// by max(s - threshold, 0). The unique minimizer of
/// threshold*||Z||_* + 0.5*||Z - x||_F^2.
Matrix soft_threshold_singular_values(const Matrix& x, double threshold);

}  // namespace hvaf

#endif
