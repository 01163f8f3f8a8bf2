#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "concave_field/coefficient_model.hpp"
#include "concave_field/errors.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/simplex.hpp"

using namespace concave_field;

namespace {

double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

} // namespace

TEST_SUITE_BEGIN("coefficient_models");

TEST_CASE("model spec grammar round-trips") {
    const auto e = CoefficientModel::parse("exponential:rate=2.0", 2);
    CHECK(e.kind() == CoefficientModel::Kind::IidExponential);
    CHECK(e.dim() == 2);

    const auto g = CoefficientModel::parse("gamma:shapes=[1.5,2.0],scales=[1,1]", 2);
    CHECK(g.kind() == CoefficientModel::Kind::IndependentGamma);
    CHECK(g.alpha() == doctest::Approx(1.5));

    const auto u = CoefficientModel::parse("uniform:scale=1.0", 3);
    CHECK(u.alpha() == 0.0);
    CHECK(u.gamma_coeff() == doctest::Approx(1.0));

    const auto c = CoefficientModel::parse("constant-h:gamma=0.5", 2);
    CHECK_FALSE(c.sampleable());

    CHECK_THROWS_AS(CoefficientModel::parse("weibull:k=2", 2), ParseError);
    CHECK_THROWS_AS(CoefficientModel::parse("gamma:shapes=[1.5],scales=[1]", 2), ParseError);
}

TEST_CASE("exponential sampler mean matches the law of large numbers") {
    const auto m = CoefficientModel::iid_exponential(2, 1.0);
    SplitRng rng(123, 0);
    double s0 = 0.0, s1 = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const Vec c = m.sample_C(rng);
        s0 += c[0];
        s1 += c[1];
    }
    CHECK(s0 / draws == doctest::Approx(1.0).epsilon(0.02));
    CHECK(s1 / draws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gamma(shape 1) reproduces the exponential law") {
    const auto g = CoefficientModel::independent_gamma({1.0, 1.0}, {1.0, 1.0});
    const auto e = CoefficientModel::iid_exponential(2, 1.0);
    SplitRng rng_g(5, 0), rng_e(5, 1);
    std::vector<double> a, b;
    for (int i = 0; i < 10000; ++i) {
        a.push_back(g.sample_C(rng_g)[0]);
        b.push_back(e.sample_C(rng_e)[0]);
    }
    CHECK(ks_distance(a, b) < 0.02);
}

TEST_CASE("components are uncorrelated") {
    const auto m = CoefficientModel::independent_gamma({1.5, 2.0}, {1.0, 2.0});
    SplitRng rng(99, 0);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const Vec c = m.sample_C(rng);
        sx += c[0];
        sy += c[1];
        sxx += c[0] * c[0];
        syy += c[1] * c[1];
        sxy += c[0] * c[1];
    }
    const double n = draws;
    const double r = (sxy / n - sx / n * sy / n) /
                     std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
    CHECK(std::abs(r) < 0.03);
}

TEST_CASE("constant-h cannot be sampled") {
    const auto c = CoefficientModel::constant_intensity(2, 1.0);
    SplitRng rng(1, 0);
    CHECK_THROWS_AS(c.sample_C(rng), NotSampleableError);
    CHECK_THROWS_AS(c.cgf({-1.0, -1.0}), UnsupportedError);
}

TEST_CASE("cgf closed forms") {
    const auto e = CoefficientModel::iid_exponential(2, 1.0);
    CHECK(e.cgf({-1.0, -1.0}) == doctest::Approx(-1.3862943611198906).epsilon(1e-12));
    CHECK(e.cgf({0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(e.cgf({0.5, -1.0}), DomainError);

    const auto u = CoefficientModel::iid_uniform(2, 1.0);
    CHECK(u.cgf({-1.0, 0.0}) == doctest::Approx(-0.4586751453870819).epsilon(1e-12));

    // Gamma(shape 1, beta 1) must match the exponential closed form.
    const auto g = CoefficientModel::independent_gamma({1.0, 1.0}, {1.0, 1.0});
    CHECK(g.cgf({-0.7, -0.2}) == doctest::Approx(e.cgf({-0.7, -0.2})).epsilon(1e-12));
}

TEST_CASE("cgf against a Monte Carlo log-mean-exp") {
    const auto e = CoefficientModel::iid_exponential(2, 1.0);
    SplitRng rng(77, 0);
    const Vec t{-1.0, -1.0};
    double acc = 0.0;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) {
        const Vec c = e.sample_C(rng);
        acc += std::exp(t[0] * c[0] + t[1] * c[1]);
    }
    CHECK(std::log(acc / draws) == doctest::Approx(e.cgf(t)).epsilon(0.01));
}

TEST_CASE("intensity integral closed forms") {
    const auto c1 = CoefficientModel::constant_intensity(2, 1.0);
    const auto p2 = SimplexPoint::interior({0.5, 0.5});
    CHECK(c1.intensity_integral_R(p2, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c1.intensity_integral_R(p2, 0.0) == 0.0);
    CHECK_THROWS_AS(c1.intensity_integral_R(p2, -1.0), DomainError);

    const auto c3 = CoefficientModel::constant_intensity(3, 1.0);
    CHECK(c3.intensity_integral_R(SimplexPoint::barycenter(3), 1.0) ==
          doctest::Approx(4.5).epsilon(1e-12));

    // The uniform model has h == 1, so its quadrature route must agree with
    // the exact volume a^n / (n! p1 p2).
    const auto u = CoefficientModel::iid_uniform(2, 1.0);
    CHECK(u.intensity_integral_R(p2, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("slice constant matches the Dirichlet closed form") {
    // integral over {sum x < 1} of prod x_i^{a_i} dx
    //   = prod Gamma(1 + a_i) / Gamma(n + sum a_i + 1).
    const auto g = CoefficientModel::independent_gamma({1.5, 1.5}, {1.0, 1.0});
    const double dirichlet = std::exp(2.0 * std::lgamma(1.5) - std::lgamma(4.0));
    const double expected = g.gamma_coeff() * dirichlet;
    CHECK(g.slice_constant_M() == doctest::Approx(expected).epsilon(1e-8));
    CHECK(g.slice_constant_M() == doctest::Approx(1.0 / 6.0).epsilon(1e-8));

    const auto g3 = CoefficientModel::independent_gamma({2.0, 1.0, 1.5}, {1.0, 2.0, 1.0});
    const double d3 =
        std::exp(std::lgamma(2.0) + std::lgamma(1.0) + std::lgamma(1.5) - std::lgamma(4.5 + 1.0));
    CHECK(g3.slice_constant_M() == doctest::Approx(g3.gamma_coeff() * d3).epsilon(1e-6));
}

TEST_CASE("intensity integral against the Monte Carlo route") {
    SplitRng rng(2025, 0);
    const auto u = CoefficientModel::iid_uniform(2, 1.0);
    const auto p = SimplexPoint::interior({0.5, 0.5});
    const auto [est, se] = u.intensity_integral_mc(p, 1.0, 1000000, rng);
    CHECK(est == doctest::Approx(2.0).epsilon(0.01));
    CHECK(se < 0.01);

    const auto g = CoefficientModel::independent_gamma({1.5, 1.5}, {1.0, 1.0});
    const auto q = SimplexPoint::interior({0.3, 0.7});
    const auto [estg, seg] = g.intensity_integral_mc(q, 0.8, 400000, rng);
    CHECK(estg == doctest::Approx(g.intensity_integral_R(q, 0.8)).epsilon(0.02));
}

TEST_CASE("h is homogeneous of order alpha") {
    SplitRng rng(55, 0);
    const auto g = CoefficientModel::independent_gamma({1.5, 2.0, 0.8}, {1.0, 1.0, 2.0});
    const double alpha = g.alpha();
    for (int trial = 0; trial < 20; ++trial) {
        Vec x(3);
        for (double& c : x) c = rng.uniform(0.1, 4.0);
        for (double kappa : {0.1, 0.5, 2.0}) {
            Vec kx(3);
            for (std::size_t i = 0; i < 3; ++i) kx[i] = kappa * x[i];
            CHECK(std::abs(g.h(kx) - std::pow(kappa, alpha) * g.h(x)) <=
                  1e-12 * std::abs(g.h(x)) * std::max(1.0, std::pow(kappa, alpha)));
        }
    }
}

TEST_CASE("density converges to h at small scale") {
    const auto models = {CoefficientModel::iid_uniform(2, 1.0),
                         CoefficientModel::independent_gamma({1.5, 1.5}, {1.0, 1.0})};
    for (const auto& m : models) {
        const double alpha = m.alpha();
        double prev_err = 1e300;
        for (double kappa : {1e-1, 1e-2, 1e-3}) {
            double sup_err = 0.0;
            for (const SimplexPoint& x : interior_grid(2, 21, 1e-3)) {
                Vec kx(2);
                for (std::size_t i = 0; i < 2; ++i) kx[i] = kappa * x[i];
                const double scaled = m.density(kx) / std::pow(kappa, alpha);
                sup_err = std::max(sup_err, std::abs(scaled - m.h(x.coords())));
            }
            CHECK(sup_err < prev_err + 1e-15);
            prev_err = sup_err;
        }
        CHECK(prev_err < 1e-2);
    }
}

TEST_CASE("intensity integral scales like t^{n+alpha}") {
    const auto g = CoefficientModel::independent_gamma({1.5, 1.5}, {1.0, 1.0});
    const auto p = SimplexPoint::interior({0.4, 0.6});
    const double base = g.intensity_integral_R(p, 1.0);
    for (double t : {0.5, 2.0}) {
        CHECK(g.intensity_integral_R(p, t) ==
              doctest::Approx(std::pow(t, 2.0 + g.alpha()) * base).epsilon(1e-12));
    }
}

TEST_SUITE_END();
