#include <doctest.h>

#include <cmath>
#include <vector>

#include "concave_field/rng.hpp"
#include "concave_field/softmin.hpp"

using namespace concave_field;

namespace {

// Independent route: evaluate the defining expression directly in extended
// precision, without the shift used by the implementation.
long double softmin_reference(const std::vector<double>& v, double lambda) {
    long double sum = 0.0L;
    for (double x : v) sum += expl(-static_cast<long double>(lambda) * x);
    sum /= static_cast<long double>(v.size());
    return -logl(sum) / static_cast<long double>(lambda);
}

} // namespace

TEST_SUITE_BEGIN("softmin");

TEST_CASE("constant list returns the common value") {
    CHECK(softmin({3.0, 3.0, 3.0}, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(softmin({-1.5, -1.5}, 0.25) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("two-point value matches the direct expression") {
    // -(1/1) log((1 + e^{-2})/2), evaluated independently.
    const double expected = 0.5662191695169728;
    CHECK(softmin({0.0, 2.0}, 1.0) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(static_cast<double>(softmin_reference({0.0, 2.0}, 1.0)) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("hardmin returns the exact minimum") {
    CHECK(softmin({1.0, 5.0, 2.0}, kHardmin) == 1.0);
}

TEST_CASE("empty input throws") {
    std::vector<double> empty;
    CHECK_THROWS_AS(softmin(std::span<const double>(empty), 1.0), EmptyEnsembleError);
}

TEST_CASE("stable under large lambda * range") {
    // Unstabilized evaluation would overflow exp(900).
    const double v = softmin({0.5, 1000.0}, 900.0);
    CHECK(v == doctest::Approx(0.5 + std::log(2.0) / 900.0).epsilon(1e-12));
}

TEST_CASE("sandwich bounds hold on the worked example") {
    std::vector<double> v{0.0, 2.0};
    const auto b = softmin_bounds_check(v, 1.0);
    CHECK(b.lower_ok);
    CHECK(b.upper_ok);
    CHECK(softmin(v, 1.0) <= std::log(2.0) + 1e-12);
}

TEST_CASE("sandwich bounds hold on random inputs") {
    SplitRng rng(2024, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + rng.next_u64() % 12;
        std::vector<double> v(k);
        for (double& x : v) x = rng.uniform(-50.0, 50.0);
        const double lambda = rng.uniform(0.1, 100.0);
        const auto b = softmin_bounds_check(v, lambda);
        CHECK(b.lower_ok);
        CHECK(b.upper_ok);
    }
}

TEST_CASE("translation equivariance") {
    std::vector<double> v{0.0, 2.0};
    CHECK(softmin({5.0, 7.0}, 1.0) == doctest::Approx(5.5662191695169728).epsilon(1e-13));
    CHECK(softmin_shift_check(v, 1.0, 5.0));
    CHECK(softmin_shift_check(v, 1.0, 0.0));

    SplitRng rng(7, 1);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 1 + rng.next_u64() % 8;
        std::vector<double> x(k);
        for (double& xi : x) xi = rng.uniform(-10.0, 10.0);
        CHECK(softmin_shift_check(x, rng.uniform(0.2, 50.0), rng.uniform(-20.0, 20.0)));
    }
}

TEST_CASE("monotone in each argument") {
    SplitRng rng(11, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 2 + rng.next_u64() % 6;
        std::vector<double> x(k), y(k);
        for (std::size_t i = 0; i < k; ++i) {
            x[i] = rng.uniform(-5.0, 5.0);
            y[i] = x[i] + rng.uniform(0.0, 3.0);
        }
        const double lambda = rng.uniform(0.5, 20.0);
        CHECK(softmin(y, lambda) >= softmin(x, lambda) - 1e-12);
    }
}

TEST_CASE("midpoint concave in the argument vector") {
    SplitRng rng(13, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 2 + rng.next_u64() % 6;
        std::vector<double> x(k), y(k), mid(k);
        for (std::size_t i = 0; i < k; ++i) {
            x[i] = rng.uniform(-5.0, 5.0);
            y[i] = rng.uniform(-5.0, 5.0);
            mid[i] = 0.5 * (x[i] + y[i]);
        }
        const double lambda = rng.uniform(0.5, 20.0);
        CHECK(softmin(mid, lambda) >=
              0.5 * (softmin(x, lambda) + softmin(y, lambda)) - 1e-12);
    }
}

TEST_CASE("symmetric under permutation") {
    CHECK(softmin({1.0, 2.0, 3.0}, 2.5) == softmin({3.0, 1.0, 2.0}, 2.5));
}

TEST_CASE("approaches the hardmin at rate log(K)/lambda") {
    std::vector<double> v{0.3, 0.9, 1.1, 4.0};
    for (double lambda : {1.0, 10.0, 100.0, 1e4}) {
        CHECK(std::abs(softmin(v, lambda) - 0.3) <= std::log(4.0) / lambda + 1e-12);
    }
}

TEST_SUITE_END();
