#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "l0lms/systems.hpp"

using namespace l0lms;

TEST_CASE("gen_general_sparse: zero/nonzero split") {
    const auto ir = gen_general_sparse(128, 8, 0.0, 42);
    CHECK(ir.length() == 128);
    CHECK(ir.large_idx.size() == 8);
    CHECK(std::is_sorted(ir.large_idx.begin(), ir.large_idx.end()));
    std::size_t zeros = 0, nonzeros = 0;
    for (double v : ir.h) (v == 0.0 ? zeros : nonzeros)++;
    CHECK(zeros == 120);
    CHECK(nonzeros == 8);
    for (std::size_t i : ir.large_idx) CHECK(ir.h[i] != 0.0);
}

TEST_CASE("gen_general_sparse: fully dense edge") {
    const auto ir = gen_general_sparse(128, 128, 0.0, 7);
    CHECK(std::count(ir.h.begin(), ir.h.end(), 0.0) == 0);
    CHECK(ir.large_idx.size() == 128);
}

TEST_CASE("gen_general_sparse: determinism and small coefficients") {
    const auto a = gen_general_sparse(64, 6, 1e-4, 123);
    const auto b = gen_general_sparse(64, 6, 1e-4, 123);
    CHECK(a == b);
    const auto c = gen_general_sparse(64, 6, 1e-4, 124);
    CHECK(a.h != c.h);

    // Off-support entries are not zero when small_var > 0.
    std::size_t zeros = 0;
    for (double v : a.h) zeros += v == 0.0;
    CHECK(zeros == 0);

    double small_energy = 0.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < a.h.size(); ++i) {
        if (next < a.large_idx.size() && a.large_idx[next] == i) {
            ++next;
            continue;
        }
        small_energy += a.h[i] * a.h[i];
    }
    // 58 draws of variance 1e-4; loose law-of-large-numbers check.
    CHECK(small_energy / 58.0 == doctest::Approx(1e-4).epsilon(0.5));
}

TEST_CASE("gen_general_sparse: contract violations") {
    CHECK_THROWS_AS(gen_general_sparse(8, 9, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_general_sparse(8, 0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_general_sparse(8, 2, -1.0, 1), std::invalid_argument);
}

TEST_CASE("gen_cluster_sparse: support and scaling") {
    const auto ir = gen_cluster_sparse(500, 100, 96, 0.0, 5);
    for (std::size_t i = 0; i < 100; ++i) CHECK(ir.h[i] == 0.0);
    for (std::size_t i = 100; i < 196; ++i) CHECK(ir.h[i] != 0.0);
    for (std::size_t i = 196; i < 500; ++i) CHECK(ir.h[i] == 0.0);

    const auto quiet = gen_cluster_sparse(500, 100, 96, -6.0, 5);
    const double scale = std::pow(10.0, -6.0 / 20.0);
    CHECK(scale == doctest::Approx(0.5011872336272722).epsilon(1e-14));
    for (std::size_t i = 100; i < 196; ++i)
        CHECK(quiet.h[i] == doctest::Approx(scale * ir.h[i]).epsilon(1e-14));

    // Cluster flush against the tail is valid.
    const auto tail = gen_cluster_sparse(500, 404, 96, 0.0, 5);
    CHECK(tail.h[403] == 0.0);
    CHECK(tail.h[404] != 0.0);
    CHECK(tail.h[499] != 0.0);

    CHECK_THROWS_AS(gen_cluster_sparse(500, 405, 96, 0.0, 5), std::invalid_argument);
}

TEST_CASE("apply_change: relocate and rescale") {
    const auto ir = gen_cluster_sparse(500, 100, 96, 0.0, 41);
    const auto moved = apply_change(ir, ChangeEvent{30000, 300, -6.0});

    for (std::size_t i = 0; i < 300; ++i) CHECK(moved.h[i] == 0.0);
    for (std::size_t i = 300; i < 396; ++i) CHECK(moved.h[i] != 0.0);
    for (std::size_t i = 396; i < 500; ++i) CHECK(moved.h[i] == 0.0);

    const double scale = std::pow(10.0, -6.0 / 20.0);
    for (std::size_t k = 0; k < 96; ++k)
        CHECK(moved.h[300 + k] == doctest::Approx(scale * ir.h[100 + k]).epsilon(1e-14));
    CHECK(moved.energy() == doctest::Approx(scale * scale * ir.energy()).epsilon(1e-12));

    // Multiset of |h| preserved up to the gain factor.
    std::vector<double> a, b;
    for (double v : ir.h)
        if (v != 0.0) a.push_back(std::abs(v) * scale);
    for (double v : moved.h)
        if (v != 0.0) b.push_back(std::abs(v));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-13));

    // Identity event.
    const auto same = apply_change(ir, ChangeEvent{1, 100, 0.0});
    CHECK(same.h == ir.h);

    // Original untouched.
    CHECK(ir.meta.delay == 100);
    CHECK(ir.h[100] != 0.0);

    CHECK_THROWS_AS(apply_change(ir, ChangeEvent{1, 450, 0.0}), std::invalid_argument);
}

TEST_CASE("impulse response csv") {
    ImpulseResponse ir;
    ir.h = {0.0, 1.5, -2.25};
    ir.large_idx = {1, 2};
    std::ostringstream os;
    write_csv(ir, os);
    CHECK(os.str() == "index,value\n0,0\n1,1.5\n2,-2.25\n");
}

TEST_CASE("canonical system seeds are parameter determined") {
    CHECK(general_system_seed(128, 8, 0.0) == general_system_seed(128, 8, 0.0));
    CHECK(general_system_seed(128, 8, 0.0) != general_system_seed(128, 16, 0.0));
    CHECK(general_system_seed(128, 8, 0.0) != general_system_seed(128, 8, 1e-4));
    CHECK(cluster_system_seed(500, 100, 96) == cluster_system_seed(500, 100, 96));
    CHECK(cluster_system_seed(500, 100, 96) != cluster_system_seed(500, 300, 96));
}
