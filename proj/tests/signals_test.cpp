#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "l0lms/signals.hpp"

using namespace l0lms;

namespace {

double sample_variance(const std::vector<double>& x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    return var / x.size();
}

ImpulseResponse impulse_at(std::size_t l, std::size_t pos, double value = 1.0) {
    ImpulseResponse ir;
    ir.h.assign(l, 0.0);
    ir.h[pos] = value;
    ir.large_idx = {pos};
    return ir;
}

}  // namespace

TEST_CASE("gen_white: variance and determinism") {
    const auto x = gen_white(100000, 1.0, 99);
    CHECK(sample_variance(x) == doctest::Approx(1.0).epsilon(0.02));

    const auto y = gen_white(100000, 1e-4, 99);
    CHECK(sample_variance(y) == doctest::Approx(1e-4).epsilon(0.02));

    CHECK(gen_white(1000, 1.0, 7) == gen_white(1000, 1.0, 7));
    CHECK(gen_white(1000, 1.0, 7) != gen_white(1000, 1.0, 8));
    CHECK_THROWS_AS(gen_white(0, 1.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(gen_white(10, 0.0, 7), std::invalid_argument);
}

TEST_CASE("color_ar1") {
    const std::vector<double> u{1.0, 0.0, 0.0};
    const auto h = color_ar1(u, 0.8);
    REQUIRE(h.size() == 3);
    CHECK(h[0] == 1.0);
    CHECK(h[1] == 0.8);
    CHECK(h[2] == 0.8 * 0.8);
    CHECK(h[2] == doctest::Approx(0.64).epsilon(1e-15));

    const auto w = gen_white(5000, 1.0, 12);
    CHECK(color_ar1(w, 0.0) == w);

    const auto x = color_ar1(gen_white(200000, 1.0, 13), 0.8);
    CHECK(sample_variance(x) == doctest::Approx(1.0 / (1.0 - 0.64)).epsilon(0.05));

    CHECK_THROWS_AS(color_ar1(u, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(color_ar1(u, -1.2), std::invalid_argument);
}

TEST_CASE("normalize_power") {
    const auto x = color_ar1(gen_white(20000, 4.0, 21), 0.8);
    const auto n = normalize_power(x);
    CHECK(sample_variance(n) == doctest::Approx(1.0).epsilon(1e-9));

    // Scale invariance: a rescaled input normalizes to the same sequence.
    std::vector<double> x7(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x7[i] = 7.0 * x[i];
    const auto n7 = normalize_power(x7);
    for (std::size_t i = 0; i < n.size(); ++i)
        CHECK(n7[i] == doctest::Approx(n[i]).epsilon(1e-12));

    CHECK_THROWS_AS(normalize_power(std::vector<double>(16, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(normalize_power(std::vector<double>(16, 3.0)), std::invalid_argument);
}

TEST_CASE("synth_desired") {
    const auto x = gen_white(512, 1.0, 31);

    // Identity system passes the excitation through.
    CHECK(synth_desired(x, impulse_at(8, 0), 0.0, 1) == x);

    // Pure delay.
    const auto d3 = synth_desired(x, impulse_at(8, 3), 0.0, 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(d3[i] == 0.0);
    for (std::size_t i = 3; i < x.size(); ++i) CHECK(d3[i] == x[i - 3]);

    // Zero system leaves only the observation noise.
    ImpulseResponse zero;
    zero.h.assign(8, 0.0);
    const auto noise_only = synth_desired(x, zero, 1e-3, 77);
    CHECK(sample_variance(noise_only) == doctest::Approx(1e-3).epsilon(0.15));

    CHECK(synth_desired(x, impulse_at(8, 1), 1e-3, 5) == synth_desired(x, impulse_at(8, 1), 1e-3, 5));
}

TEST_CASE("synth_desired is linear in the system") {
    const auto x = gen_white(256, 1.0, 41);
    ImpulseResponse h1, h2, sum;
    h1.h = {0.5, -1.0, 0.0, 2.0};
    h2.h = {0.0, 0.25, -0.75, 1.0};
    sum.h.resize(4);
    for (int i = 0; i < 4; ++i) sum.h[i] = h1.h[i] + h2.h[i];

    const auto d1 = synth_desired(x, h1, 0.0, 0);
    const auto d2 = synth_desired(x, h2, 0.0, 0);
    const auto ds = synth_desired(x, sum, 0.0, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(ds[i] == doctest::Approx(d1[i] + d2[i]).epsilon(1e-12));
}

TEST_CASE("make_excitation realizes every field") {
    SignalSpec spec{SignalKind::ar1, 1.0, 0.8, true};
    const auto x = make_excitation(spec, 50000, 9);
    CHECK(sample_variance(x) == doctest::Approx(1.0).epsilon(1e-9));

    SignalSpec bad = spec;
    bad.ar_coeff = 1.5;
    CHECK_THROWS_AS(make_excitation(bad, 100, 9), std::invalid_argument);
}
