#include <doctest.h>

#include <cmath>
#include <random>

#include "cogatr/dsp.hpp"
#include "cogatr/errors.hpp"
#include "oracles.hpp"

using namespace cogatr;

TEST_CASE("dft: unit impulse spreads evenly") {
    const std::vector<Complex> x = {1, 0, 0, 0};
    for (const Complex& z : unitary_dft(x)) CHECK(std::abs(z) == doctest::Approx(0.5));
}

TEST_CASE("dft: zeros map to zeros") {
    for (const Complex& z : unitary_dft(std::vector<Complex>(8))) CHECK(z == Complex(0, 0));
}

TEST_CASE("dft: matches the direct sum") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 3u, 8u, 16u, 64u, 100u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto x = oracle::random_vector(rng, n);
            const auto fast = unitary_dft(x);
            const auto slow = oracle::brute_dft(x);
            REQUIRE(fast.size() == n);
            CHECK(oracle::max_abs_diff(fast, slow) <= 1e-9 * std::max(1.0, oracle::max_abs(slow)));
        }
    }
}

TEST_CASE("dft: Parseval") {
    std::mt19937_64 rng(4);
    const auto x = oracle::random_vector(rng, 64);
    CHECK(mean_power(unitary_dft(x)) == doctest::Approx(mean_power(x)).epsilon(1e-12));
}

TEST_CASE("dft: empty input rejected") {
    CHECK_THROWS_AS(unitary_dft(std::vector<Complex>{}), std::invalid_argument);
}

TEST_CASE("dft: range profile bin spacing is c/(2B)") {
    RadarBand band;
    band.bandwidth_hz = 2.5e8;
    const RangeProfile p = dft(std::vector<Complex>(64, Complex(1, 0)), band);
    CHECK(p.samples.size() == 64);
    CHECK(p.bin_spacing_m == doctest::Approx(kSpeedOfLight / 5e8).epsilon(1e-15));
}

TEST_CASE("features: examples") {
    const std::vector<Complex> impulse = {1, 0, 0, 0};
    const std::vector<double> e0 = {1, 0, 0, 0};
    CHECK(extract_features(impulse, Domain::FREQUENCY).values == e0);
    CHECK(extract_features(std::vector<Complex>{2, 0, 0, 0}, Domain::FREQUENCY).values == e0);

    const FeatureVector r = extract_features(std::vector<Complex>{1, 1, 1, 1}, Domain::RANGE);
    CHECK(r.domain == Domain::RANGE);
    CHECK(r.values[0] == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(r.values[i]) < 1e-15);

    const FeatureVector f = extract_features(impulse, Domain::RANGE);
    for (double v : f.values) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("features: all-zero input is degenerate") {
    CHECK_THROWS_AS(extract_features(std::vector<Complex>(8), Domain::RANGE), DegenerateSignal);
    CHECK_THROWS_AS(extract_features(std::vector<Complex>(8), Domain::FREQUENCY), DegenerateSignal);
}

TEST_CASE("features: unit norm and invariant to complex scaling") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = oracle::random_vector(rng, 64);
        const Complex scale = std::polar(0.01 + rep * 3.7, 0.3 * rep);
        auto y = x;
        for (auto& v : y) v *= scale;
        for (Domain d : {Domain::RANGE, Domain::FREQUENCY}) {
            const auto a = extract_features(x, d).values;
            const auto b = extract_features(y, d).values;
            double norm = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                norm += a[i] * a[i];
                CHECK(a[i] >= 0.0);
                CHECK(std::abs(a[i] - b[i]) <= 1e-12);
            }
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("features: from a look") {
    const Look look = acquire_look(make_target(TargetClass::MBT, 2), Geometry(30, 30, 12), RadarBand{}, 20.0, 1);
    CHECK(extract_features(look, Domain::FREQUENCY).values == extract_features(look.kspace, Domain::FREQUENCY).values);
}
