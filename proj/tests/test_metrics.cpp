#include <doctest.h>

#include "metrics.hpp"
#include "rng.hpp"

using namespace hvaf;
using doctest::Approx;

TEST_SUITE("metrics") {

TEST_CASE("rlne basics") {
    Vector y(3);
    y << 1.0, Complex(0.0, 2.0), -1.0;
    CHECK(rlne(y, y) == 0.0);
    CHECK(rlne(Vector::Zero(3).eval(), y) == Approx(1.0));
    CHECK(rlne((2.0 * y).eval(), y) == Approx(1.0));
    CHECK_THROWS_AS(rlne(y, Vector::Zero(3).eval()), std::invalid_argument);
    CHECK_THROWS_AS(rlne(y, Vector::Zero(4).eval()), std::invalid_argument);

    // scale invariance
    Rng rng(31);
    Vector x(8), ref(8);
    for (Index i = 0; i < 8; ++i) {
        x(i) = rng.complex_normal();
        ref(i) = rng.complex_normal();
    }
    const Complex a(0.3, -2.0);
    CHECK(rlne((a * x).eval(), (a * ref).eval()) == Approx(rlne(x, ref)).epsilon(1e-12));

    // matrices share the implementation
    Matrix mx = Matrix::Random(4, 5), my = Matrix::Random(4, 5);
    CHECK(rlne(mx, my) == Approx((mx - my).norm() / my.norm()));
}

TEST_CASE("recovery_success threshold is inclusive") {
    Vector y(1), x(1);
    y << 1000.0;
    x << 1001.0;  // rlne exactly 1/1000 == 1e-3
    CHECK(rlne(x, y) == 1e-3);
    CHECK(recovery_success(x, y));
    x << 1002.0;  // 2e-3
    CHECK_FALSE(recovery_success(x, y));
    CHECK(recovery_success(y, y));
}

TEST_CASE("rlne triangle consistency") {
    Rng rng(32);
    for (int k = 0; k < 20; ++k) {
        Vector x(6), z(6), y(6);
        for (Index i = 0; i < 6; ++i) {
            x(i) = rng.complex_normal();
            z(i) = rng.complex_normal();
            y(i) = rng.complex_normal();
        }
        CHECK(rlne(x, y) <= ((x - z).norm() + (z - y).norm()) / y.norm() + 1e-12);
    }
}

TEST_CASE("snr_db") {
    Vector observed(2);
    observed << 3.0, 4.0;
    CHECK(snr_db(observed, observed) == Approx(0.0));
    CHECK(snr_db((0.1 * observed).eval(), observed) == Approx(20.0).epsilon(1e-12));
    CHECK(snr_db((std::pow(10.0, -0.75) * observed).eval(), observed) ==
          Approx(15.0).epsilon(1e-12));
    CHECK_THROWS_AS(snr_db(observed, Vector::Zero(2).eval()), std::invalid_argument);
}

}  // TEST_SUITE
