#include "doctest.h"

#include "galerkin/errors.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/io.hpp"

#include <random>

using namespace galerkin;

TEST_CASE("harmonic multiplicities")
{
    CHECK(harmonic_multiplicity(3, 1) == 3);
    CHECK(harmonic_multiplicity(3, 2) == 5);
    CHECK(harmonic_multiplicity(3, 3) == 7);
    CHECK(harmonic_multiplicity(3, 4) == 9);
    CHECK(harmonic_multiplicity(2, 5) == 2);
    CHECK(harmonic_multiplicity(5, 2) == 14);
    for (int d = 2; d <= 30; ++d) {
        CHECK(harmonic_multiplicity(d, 1) == static_cast<std::uint64_t>(d));
    }
    CHECK_THROWS_AS((void)harmonic_multiplicity(1, 1), InputError);
}

TEST_CASE("sphere spectrum d=3, k=25")
{
    // s(s+1) with multiplicity 2s+1
    const auto spec = sphere_spectrum(3, 25);
    REQUIRE(spec.size() == 25);
    const std::vector<std::pair<double, std::size_t>> blocks{{2, 3}, {6, 5}, {12, 7}, {20, 9}, {30, 1}};
    REQUIRE(spec.blocks().size() == blocks.size());
    std::size_t at = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        CHECK(spec.blocks()[b].eigenvalue == blocks[b].first);
        CHECK(spec.blocks()[b].multiplicity == blocks[b].second);
        for (std::size_t m = 0; m < blocks[b].second; ++m) {
            CHECK(spec.values()[at++] == blocks[b].first);
        }
    }
    CHECK(spec.sum(3) == 6.0);
}

TEST_CASE("sphere spectrum small cases")
{
    const auto d5 = sphere_spectrum(5, 5);
    CHECK(d5.values() == std::vector<double>(5, 4.0));
    for (int d = 2; d <= 12; ++d) {
        CHECK(sphere_spectrum(d, 1).values().front() == d - 1);
    }
    for (std::size_t k = 1; k <= 60; ++k) {
        CHECK(sphere_spectrum(4, k).size() == k);
    }
    CHECK_THROWS_AS(sphere_spectrum(1, 3), InputError);
    CHECK_THROWS_AS(sphere_spectrum(3, 0), InputError);
}

TEST_CASE("spectrum JSON")
{
    CHECK(io::spectrum_to_json(sphere_spectrum(3, 4)) == "[[2.0,3],[6.0,1]]");
}

TEST_CASE("surrogate error examples")
{
    const auto truth = sphere_spectrum(3, 3);
    std::vector<double> exact{0.5, 0.5, 0.5};
    CHECK(surrogate_error(truth, exact, 3) == 0.0);
    CHECK(surrogate_error(truth, std::vector<double>(3, 0.0), 3) == 1.0);
    CHECK(surrogate_error(truth, std::vector<double>(3, 1.0), 3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(surrogate_error(truth, std::vector<double>(2, 0.0), 3), InputError);
}

TEST_CASE("surrogate error is Lipschitz in each coordinate")
{
    const auto truth = sphere_spectrum(4, 10);
    double norm = 0.0;
    for (double v : truth.values()) {
        norm += 1.0 / v;
    }
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(10);
        for (auto& x : v) {
            x = u(rng);
        }
        auto w = v;
        const int i = pick(rng);
        w[i] += u(rng) - 0.5;
        const double delta = std::abs(surrogate_error(truth, v, 10) - surrogate_error(truth, w, 10));
        CHECK(delta <= std::abs(w[i] - v[i]) / norm + 1e-15);
    }
}

TEST_CASE("estimate_to_inverses")
{
    const std::vector<double> vals{0.0, 2.0, 2.0, 2.0};
    const auto inv = estimate_to_inverses(vals, 3);
    CHECK_FALSE(inv.padded);
    CHECK(inv.inverses(0) == 0.5);
    CHECK(inv.inverses(2) == 0.5);

    const auto zero = estimate_to_inverses(std::vector<double>(4, 0.0), 3);
    CHECK(zero.padded);
    CHECK(zero.inverses.isZero());

    const std::vector<double> unsorted{5.0, -1e-12, 1.0, 3.0};
    const auto sorted = estimate_to_inverses(unsorted, 4);
    CHECK(sorted.padded);
    CHECK(sorted.inverses(0) == 1.0);
    CHECK(sorted.inverses(2) == doctest::Approx(0.2));
    CHECK(sorted.inverses(3) == 0.0);
    CHECK(nonzero_eigenvalues(unsorted) == std::vector<double>{1.0, 3.0, 5.0});
}

TEST_CASE("sample_sphere")
{
    const auto a = sample_sphere(4000, 4, 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double r = 0.0;
        for (double x : a.row(i)) {
            r += x * x;
        }
        CHECK(std::abs(std::sqrt(r) - 1.0) <= 1e-12);
    }
    const double bound = 5.0 / std::sqrt(4000.0);
    for (int c = 0; c < 4; ++c) {
        CHECK(std::abs(a.points().col(c).mean()) <= bound);
    }
    CHECK(sample_sphere(4000, 4, 7).points() == a.points());
    CHECK(sample_sphere(4000, 4, 8).points() != a.points());
    CHECK_THROWS_AS(sample_sphere(10, 1, 0), InputError);
}

TEST_CASE("sample_two_moons")
{
    const auto clean = sample_two_moons_labeled(501, 0.0, 3);
    std::size_t upper = 0;
    for (std::size_t i = 0; i < clean.data.size(); ++i) {
        const auto x = clean.data.row(i);
        const double r = clean.labels[i] == 0 ? std::hypot(x[0], x[1]) : std::hypot(x[0] - 1.0, x[1] - 0.5);
        CHECK(std::abs(r - 1.0) <= 1e-12);
        upper += clean.labels[i] == 0 ? 1 : 0;
    }
    CHECK(upper == 251);
    const auto noisy = sample_two_moons(300, 0.1, 4);
    CHECK(noisy.dim() == 2);
    CHECK(sample_two_moons(300, 0.1, 4).points() == noisy.points());
    CHECK(sample_two_moons(300, 0.1, 5).points() != noisy.points());
    CHECK(sample_two_moons_labeled(300, 0.1, 4).data.points() == noisy.points());
    CHECK_THROWS_AS(sample_two_moons(10, -1.0, 0), InputError);
}

TEST_CASE("sample_gaussian")
{
    const std::size_t n = 5000;
    const auto g = sample_gaussian(n, 3, 9);
    for (int c = 0; c < 3; ++c) {
        const auto col = g.points().col(c);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / static_cast<double>(n - 1);
        CHECK(std::abs(mean) <= 5.0 / std::sqrt(static_cast<double>(n)));
        CHECK(std::abs(var - 1.0) <= 10.0 / std::sqrt(static_cast<double>(n)));
    }
    CHECK(sample_gaussian(n, 3, 9).points() == g.points());
    CHECK(sample_gaussian(n, 3, 10).points() != g.points());
}
