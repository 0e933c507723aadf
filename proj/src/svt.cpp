#include "svt.hpp"

#include <algorithm>
#include <string>
#include <vector>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace hvaf {

namespace {

/// Workspace for gesdd, reused across calls of the same shape. The solver
/// performs thousands of small SVDs per run; per-call workspace queries and
/// allocations would dominate the cost.
struct SvdWorkspace {
    lapack_int rows = 0, cols = 0;
    std::vector<Complex> work;
    std::vector<double> rwork;
    std::vector<lapack_int> iwork;

    void resize(lapack_int m, lapack_int n) {
        if (m == rows && n == cols) return;
        rows = m;
        cols = n;
        const lapack_int k = std::min(m, n);
        const lapack_int mx = std::max(m, n);
        Complex lwork_query;
        double rwork_probe;
        lapack_int iwork_probe;
        double s_probe;
        Complex mat_probe, u_probe, vh_probe;
        LAPACKE_zgesdd_work(LAPACK_COL_MAJOR, 'S', m, n, &mat_probe, m, &s_probe, &u_probe, m,
                            &vh_probe, k, &lwork_query, -1, &rwork_probe, &iwork_probe);
        work.resize(static_cast<std::size_t>(lwork_query.real()));
        rwork.resize(static_cast<std::size_t>(
            std::max<lapack_int>(1, k * std::max<lapack_int>(5 * k + 7, 2 * mx + 2 * k + 1))));
        iwork.resize(static_cast<std::size_t>(8) * k);
    }
};

thread_local SvdWorkspace g_workspace;

}  // namespace

Svd thin_svd(Matrix a) {
    const lapack_int rows = static_cast<lapack_int>(a.rows());
    const lapack_int cols = static_cast<lapack_int>(a.cols());
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("thin_svd: empty matrix");
    }
    const lapack_int k = std::min(rows, cols);

    Svd out;
    out.u.resize(rows, k);
    out.singular_values.resize(k);
    out.vh.resize(k, cols);

    SvdWorkspace& ws = g_workspace;
    ws.resize(rows, cols);
    Matrix scratch = a;  // gesdd destroys its input
    lapack_int info = LAPACKE_zgesdd_work(
        LAPACK_COL_MAJOR, 'S', rows, cols, scratch.data(), rows, out.singular_values.data(),
        out.u.data(), rows, out.vh.data(), k, ws.work.data(),
        static_cast<lapack_int>(ws.work.size()), ws.rwork.data(), ws.iwork.data());
    if (info != 0) {
        RealVector superb(k > 1 ? k - 1 : 1);
        info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', rows, cols, a.data(), rows,
                              out.singular_values.data(), out.u.data(), rows, out.vh.data(), k,
                              superb.data());
    }
    if (info != 0) {
        throw NumericError("SVD failed to converge for a " + std::to_string(rows) + "x" +
                           std::to_string(cols) + " matrix (info=" + std::to_string(info) + ")");
    }
    return out;
}

Matrix soft_threshold_singular_values(const Matrix& x, double threshold) {
    if (threshold < 0.0) {
        throw std::invalid_argument("soft_threshold_singular_values: negative threshold");
    }
    Svd svd = thin_svd(x);
    const RealVector kept = (svd.singular_values.array() - threshold).max(0.0);
    return svd.u * kept.asDiagonal() * svd.vh;
}

}  // namespace hvaf
