#include <doctest.h>

#include "rng.hpp"
#include "svt.hpp"

using namespace hvaf;

namespace {

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
    Matrix x(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) x(i, j) = rng.complex_normal();
    return x;
}

double nuclear_norm(const Matrix& x) { return thin_svd(x).singular_values.sum(); }

double prox_objective(const Matrix& z, const Matrix& x, double t) {
    return t * nuclear_norm(z) + 0.5 * (z - x).squaredNorm();
}

}  // namespace

TEST_SUITE("svt") {

TEST_CASE("diagonal case") {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 0) = 3.0;
    x(1, 1) = 1.0;
    const Matrix out = soft_threshold_singular_values(x, 2.0);
    CHECK(std::abs(out(0, 0) - Complex(1.0)) <= 1e-14);
    CHECK(std::abs(out(1, 1)) <= 1e-14);
    CHECK(std::abs(out(0, 1)) <= 1e-14);
}

TEST_CASE("zero threshold is the identity") {
    Rng rng(21);
    const Matrix x = random_matrix(5, 7, rng);
    CHECK((soft_threshold_singular_values(x, 0.0) - x).norm() <= 1e-12 * x.norm());
}

TEST_CASE("prox optimality against random perturbations") {
    Rng rng(22);
    const Matrix x = random_matrix(6, 4, rng);
    const RealVector sv = thin_svd(x).singular_values;
    const double t = sv(sv.size() / 2);  // median-scale threshold
    const Matrix prox = soft_threshold_singular_values(x, t);
    const double best = prox_objective(prox, x, t);
    for (int k = 0; k < 100; ++k) {
        const Matrix perturbed = prox + 1e-3 * random_matrix(6, 4, rng);
        CHECK(prox_objective(perturbed, x, t) > best);
    }
}

TEST_CASE("singular values map to max(s - t, 0)") {
    Rng rng(23);
    const Matrix x = random_matrix(8, 6, rng);
    const double t = 0.8;
    const RealVector before = thin_svd(x).singular_values;
    const RealVector after = thin_svd(soft_threshold_singular_values(x, t)).singular_values;
    for (Index i = 0; i < after.size(); ++i) {
        CHECK(std::abs(after(i) - std::max(before(i) - t, 0.0)) <= 1e-10);
    }
}

TEST_CASE("nuclear norm and rank never increase") {
    Rng rng(24);
    for (int k = 0; k < 5; ++k) {
        const Matrix x = random_matrix(7, 5, rng);
        const Matrix out = soft_threshold_singular_values(x, 0.3 + 0.2 * k);
        CHECK(nuclear_norm(out) <= nuclear_norm(x) + 1e-12);
        const RealVector sx = thin_svd(x).singular_values;
        const RealVector so = thin_svd(out).singular_values;
        CHECK((so.array() > 1e-12 * sx(0)).count() <= (sx.array() > 1e-12 * sx(0)).count());
    }
}

TEST_CASE("nonexpansiveness") {
    Rng rng(25);
    for (int k = 0; k < 10; ++k) {
        const Matrix x = random_matrix(6, 6, rng);
        const Matrix y = random_matrix(6, 6, rng);
        const double t = 0.5;
        const Matrix sx = soft_threshold_singular_values(x, t);
        const Matrix sy = soft_threshold_singular_values(y, t);
        CHECK((sx - sy).norm() <= (x - y).norm() + 1e-12);
    }
}

TEST_CASE("full thresholding returns zero") {
    Rng rng(26);
    const Matrix x = random_matrix(4, 4, rng);
    const double t = 2.0 * thin_svd(x).singular_values(0);
    CHECK(soft_threshold_singular_values(x, t).norm() == 0.0);
}

TEST_CASE("argument errors") {
    CHECK_THROWS_AS(thin_svd(Matrix(0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(soft_threshold_singular_values(Matrix::Zero(2, 2), -1.0),
                    std::invalid_argument);
}

}  // TEST_SUITE
