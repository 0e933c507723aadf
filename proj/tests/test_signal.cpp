#include <doctest.h>

#include <cmath>

#include "metrics.hpp"
#include "rng.hpp"
#include "signal.hpp"
#include "svt.hpp"

using namespace hvaf;
using doctest::Approx;

TEST_SUITE("signal") {

TEST_CASE("synthesize hand values") {
    ExponentialModel constant{{{0.0, Complex(1.0), 0.0}}};
    Vector y = synthesize(constant, 3);
    CHECK((y - Vector::Ones(3)).norm() == 0.0);

    ExponentialModel nyquist{{{0.5, Complex(1.0), 0.0}}};
    y = synthesize(nyquist, 3);
    CHECK(std::abs(y(0) - Complex(-1.0)) <= 1e-15);
    CHECK(std::abs(y(1) - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(y(2) - Complex(-1.0)) <= 1e-15);

    // f = 1/4, c = 2, tau = ln 2: z = i/2, samples 2(i/2), 2(i/2)^2
    ExponentialModel damped{{{0.25, Complex(2.0), std::log(2.0)}}};
    y = synthesize(damped, 2);
    CHECK(std::abs(y(0) - Complex(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(y(1) - Complex(-0.5, 0.0)) <= 1e-15);

    CHECK_THROWS_AS(synthesize(ExponentialModel{}, 3), std::invalid_argument);
}

TEST_CASE("vandermonde_factor reproduces the Hankel lift") {
    ExponentialModel unit{{{0.0, Complex(1.0), 0.0}}};
    VandermondeFactor f = vandermonde_factor(unit, 2);
    CHECK(f.basis.rows() == 2);
    CHECK(f.basis.cols() == 1);
    CHECK(f.basis(0, 0) == Complex(1.0));
    CHECK(f.basis(1, 0) == Complex(1.0));
    CHECK(f.weights(0) == Complex(1.0));

    const ExponentialModel two = random_model(2, false, 99);
    f = vandermonde_factor(two, 3);
    const Matrix lift = hankelize(synthesize(two, 5), {3, 3});
    const Matrix product = f.basis * f.weights.asDiagonal() * f.basis.transpose();
    CHECK((product - lift).norm() <= 1e-10 * lift.norm());

    // damped node: column magnitudes decay geometrically
    ExponentialModel shrink{{{0.1, Complex(1.0), 0.7}}};
    f = vandermonde_factor(shrink, 4);
    const double ratio = std::abs(shrink.components[0].node());
    for (Index k = 0; k < 4; ++k) {
        CHECK(std::abs(f.basis(k, 0)) == Approx(std::pow(ratio, double(k))).epsilon(1e-12));
    }
}

TEST_CASE("lift of an order-R model has numerical rank R") {
    Rng seeds(2024);
    for (int r = 1; r <= 4; ++r) {
        const ExponentialModel model = random_model(r, r % 2 == 1, seeds.below(1u << 30));
        const Index n = 2 * 8 - 1;
        const Svd svd = thin_svd(hankelize(synthesize(model, n), default_square_shape(n)));
        CHECK(svd.singular_values(r - 1) > 1e-8 * svd.singular_values(0));
        if (r < svd.singular_values.size()) {
            CHECK(svd.singular_values(r) <= 1e-8 * svd.singular_values(0));
        }
    }
}

TEST_CASE("random_model ranges and determinism") {
    for (std::uint64_t seed : {1ULL, 77ULL, 123456ULL}) {
        const ExponentialModel m = random_model(1, true, seed);
        const double mag = std::abs(m.components[0].amplitude);
        CHECK(mag >= 2.0);
        CHECK(mag <= 1.0 + std::pow(10.0, 0.5));
        CHECK(m.components[0].damping >= 1.0 / 40.0);
        CHECK(m.components[0].damping <= 1.0 / 10.0);
        CHECK(m.components[0].frequency >= 0.0);
        CHECK(m.components[0].frequency < 1.0);
    }

    const ExponentialModel a = random_model(6, true, 42);
    const ExponentialModel b = random_model(6, true, 42);
    REQUIRE(a.order() == b.order());
    for (int r = 0; r < a.order(); ++r) {
        CHECK(a.components[r].frequency == b.components[r].frequency);
        CHECK(a.components[r].amplitude == b.components[r].amplitude);
        CHECK(a.components[r].damping == b.components[r].damping);
    }

    const ExponentialModel undamped = random_model(3, false, 5);
    for (const auto& c : undamped.components) CHECK(c.damping == 0.0);
}

TEST_CASE("random_model separation constraint") {
    const double sep = 0.05;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ExponentialModel m = random_model(5, false, seed, sep);
        CHECK(min_wraparound_separation(m) >= sep);
    }
    CHECK_THROWS_AS(random_model(4, false, 1, 0.25), std::invalid_argument);
}

TEST_CASE("random_mask full sampling, determinism, bounds") {
    const ObservationSet full = random_mask(5, 5, 3);
    REQUIRE(full.sample_count() == 5);
    for (Index i = 0; i < 5; ++i) CHECK(full.indices[i] == i + 1);

    const ObservationSet a = random_mask(127, 64, 7);
    const ObservationSet b = random_mask(127, 64, 7);
    CHECK(a.indices == b.indices);
    for (std::size_t i = 1; i < a.indices.size(); ++i) CHECK(a.indices[i] > a.indices[i - 1]);

    CHECK_THROWS_AS(random_mask(5, 6, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_mask(5, 0, 0), std::invalid_argument);
}

TEST_CASE("random_mask inclusion frequency is uniform") {
    const Index n = 10, m = 4;
    const int draws = 10000;
    std::vector<int> hits(n, 0);
    for (int d = 0; d < draws; ++d) {
        for (Index idx : random_mask(n, m, 1000 + d).indices) hits[idx - 1]++;
    }
    const double p = double(m) / double(n);
    const double sigma3 = 3.0 * std::sqrt(p * (1.0 - p) / draws);
    for (Index i = 0; i < n; ++i) {
        CHECK(std::abs(double(hits[i]) / draws - p) <= sigma3);
    }
}

TEST_CASE("add_noise has exact relative norm") {
    Rng rng(4);
    Vector y(40);
    for (Index i = 0; i < 40; ++i) y(i) = rng.complex_normal();
    const ObservationSet obs = observe(y, random_mask(40, 25, 8));

    const ObservationSet clean = add_noise(obs, 0.0, 9);
    CHECK((clean.values - obs.values).norm() == 0.0);

    for (double sigma : {1e-3, 0.1, std::pow(10.0, -0.5)}) {
        const ObservationSet noisy = add_noise(obs, sigma, 9);
        const Vector e = noisy.values - obs.values;
        CHECK(e.norm() / obs.values.norm() == Approx(sigma).epsilon(1e-12));
        CHECK(snr_db(e, obs.values) == Approx(-20.0 * std::log10(sigma)).epsilon(1e-9));
    }
    // sigma = 10^-0.5 corresponds to 10 dB
    const ObservationSet ten_db = add_noise(obs, std::pow(10.0, -0.5), 10);
    CHECK(snr_db(ten_db.values - obs.values, obs.values) == Approx(10.0).epsilon(1e-9));
}

TEST_CASE("peak_normalize") {
    Vector x(2);
    x << Complex(0.0, 2.0), Complex(1.0, 0.0);
    const Vector unit = peak_normalize(x);
    CHECK(std::abs(unit(0) - Complex(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(unit(1) - Complex(0.5, 0.0)) <= 1e-15);
    CHECK((peak_normalize(unit) - unit).norm() == 0.0);

    Rng rng(12);
    Vector big(64);
    for (Index i = 0; i < 64; ++i) big(i) = 3.7 * rng.complex_normal();
    CHECK(peak_normalize(big).cwiseAbs().maxCoeff() == Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(peak_normalize(Vector::Zero(4)), std::invalid_argument);
}

TEST_CASE("observation set validation") {
    ObservationSet bad;
    bad.n = 5;
    bad.indices = {1, 1, 3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.indices = {1, 6};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    Vector y(5);
    y << 1.0, 2.0, 3.0, 4.0, 5.0;
    ObservationSet mask;
    mask.n = 5;
    mask.indices = {2, 5};
    const ObservationSet obs = observe(y, mask);
    CHECK(obs.values(0) == Complex(2.0));
    CHECK(obs.values(1) == Complex(5.0));
    const Vector filled = obs.zero_filled();
    CHECK(filled(0) == Complex(0.0));
    CHECK(filled(1) == Complex(2.0));
    CHECK(filled(4) == Complex(5.0));
}

}  // TEST_SUITE
