#include <doctest.h>

#include "hankel.hpp"
#include "rng.hpp"
#include "svt.hpp"

using namespace hvaf;

namespace {

Vector random_vector(Index n, Rng& rng) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = rng.complex_normal();
    return x;
}

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
    Matrix x(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) x(i, j) = rng.complex_normal();
    return x;
}

}  // namespace

TEST_SUITE("hankel") {

TEST_CASE("default_square_shape") {
    CHECK(default_square_shape(127) == HankelShape{64, 64});
    CHECK(default_square_shape(4) == HankelShape{3, 2});
    CHECK(default_square_shape(1) == HankelShape{1, 1});
    CHECK_THROWS_AS(default_square_shape(0), std::invalid_argument);
    for (Index n : {1, 2, 3, 10, 127, 128}) {
        const HankelShape s = default_square_shape(n);
        CHECK(s.signal_length() == n);
        if (n % 2 == 1) CHECK(s.rows == s.cols);
    }
}

TEST_CASE("hankelize basic entries") {
    Vector x(3);
    x << 1.0, 2.0, 3.0;
    const Matrix h = hankelize(x, {2, 2});
    CHECK(h(0, 0) == Complex(1.0));
    CHECK(h(0, 1) == Complex(2.0));
    CHECK(h(1, 0) == Complex(2.0));
    CHECK(h(1, 1) == Complex(3.0));
    CHECK_THROWS_AS(hankelize(x, {2, 3}), std::invalid_argument);
}

TEST_CASE("constant vector lifts to a rank-1 matrix") {
    const Complex a(0.3, -1.7);
    Vector x(3);
    x << a, a, a;
    const Matrix h = hankelize(x, {2, 2});
    const Svd svd = thin_svd(h);
    CHECK(svd.singular_values(1) <= 1e-12 * svd.singular_values(0));
}

TEST_CASE("single exponential lifts to numerical rank 1") {
    Vector x(7);
    for (Index k = 0; k < 7; ++k) {
        x(k) = std::exp(Complex(0.0, 2.0 * 3.14159265358979323846 * 0.2 * double(k + 1)));
    }
    const Svd svd = thin_svd(hankelize(x, {4, 4}));
    CHECK(svd.singular_values(1) <= 1e-10 * svd.singular_values(0));
}

TEST_CASE("hankel_adjoint anti-diagonal sums") {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, 0.0;
    Vector a = hankel_adjoint(m);
    CHECK(a(0) == Complex(1.0));
    CHECK(a(1) == Complex(0.0));
    CHECK(a(2) == Complex(0.0));

    m << 1.0, 2.0, 2.0, 3.0;
    a = hankel_adjoint(m);
    CHECK(a(0) == Complex(1.0));
    CHECK(a(1) == Complex(4.0));
    CHECK(a(2) == Complex(3.0));

    CHECK_THROWS_AS(hankel_adjoint(Matrix(0, 0)), std::invalid_argument);
}

TEST_CASE("adjoint identity <Rx, X> = <x, R*X>") {
    Rng rng(11);
    for (const HankelShape shape : {HankelShape{4, 3}, {8, 8}, {13, 5}, {1, 6}}) {
        for (int rep = 0; rep < 10; ++rep) {
            const Vector x = random_vector(shape.signal_length(), rng);
            const Matrix y = random_matrix(shape.rows, shape.cols, rng);
            const Complex lhs = (hankelize(x, shape).conjugate().cwiseProduct(y)).sum();
            const Complex rhs = (x.conjugate().cwiseProduct(hankel_adjoint(y))).sum();
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
        }
    }
}

TEST_CASE("antidiag_weights known values") {
    RealVector w = antidiag_weights({3, 3});
    CHECK(w.size() == 5);
    CHECK(w(0) == 1.0);
    CHECK(w(1) == 2.0);
    CHECK(w(2) == 3.0);
    CHECK(w(3) == 2.0);
    CHECK(w(4) == 1.0);

    w = antidiag_weights({2, 2});
    CHECK((w - (RealVector(3) << 1, 2, 1).finished()).norm() == 0.0);
    w = antidiag_weights({3, 2});
    CHECK((w - (RealVector(4) << 1, 2, 2, 1).finished()).norm() == 0.0);
}

TEST_CASE("weights diagonalize adjoint-after-lift, shapes up to n = 257") {
    Rng rng(5);
    for (Index n : {1, 2, 3, 7, 32, 127, 256, 257}) {
        const HankelShape shape = default_square_shape(n);
        const RealVector w = antidiag_weights(shape);
        CHECK(w.maxCoeff() == double(std::min(shape.rows, shape.cols)));
        for (Index k = 0; k < n; ++k) CHECK(w(k) == w(n - 1 - k));  // symmetric

        const Vector x = random_vector(n, rng);
        const Vector composed = hankel_adjoint(hankelize(x, shape));
        // integer scaling of each entry, so equality is exact
        for (Index k = 0; k < n; ++k) CHECK(composed(k) == w(k) * x(k));
    }
}

TEST_CASE("pseudoinverse averages anti-diagonals and inverts the lift") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 3.0, 0.0;
    const Vector avg = hankel_pinv(m);
    CHECK(avg(0) == Complex(0.0));
    CHECK(avg(1) == Complex(2.0));
    CHECK(avg(2) == Complex(0.0));

    Vector x(3);
    x << 1.0, 2.0, 3.0;
    CHECK((hankel_pinv(hankelize(x, {2, 2})) - x).norm() == 0.0);

    Rng rng(3);
    const Vector big = random_vector(15, rng);
    const Vector round_trip = hankel_pinv(hankelize(big, {8, 8}));
    CHECK((round_trip - big).norm() <= 1e-15 * big.norm());
}

TEST_CASE("column select and embed") {
    Matrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Vector c = select_column(m, 2);
    CHECK(c(0) == Complex(2.0));
    CHECK(c(1) == Complex(4.0));
    CHECK_THROWS_AS(select_column(m, 3), std::out_of_range);
    CHECK_THROWS_AS(select_column(m, 0), std::out_of_range);

    Vector x(2);
    x << 5.0, 6.0;
    const Matrix e = embed_column(x, 1, 3);
    CHECK(e.rows() == 2);
    CHECK(e.cols() == 3);
    CHECK(e(0, 0) == Complex(5.0));
    CHECK(e(1, 0) == Complex(6.0));
    CHECK(e.rightCols(2).norm() == 0.0);
    CHECK_THROWS_AS(embed_column(x, 4, 3), std::out_of_range);

    Rng rng(9);
    const Vector r = random_vector(4, rng);
    CHECK((select_column(embed_column(r, 3, 5), 3) - r).norm() == 0.0);
}

}  // TEST_SUITE
