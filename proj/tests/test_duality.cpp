#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "concave_field/coefficient_model.hpp"
#include "concave_field/duality.hpp"
#include "concave_field/errors.hpp"
#include "concave_field/lp.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/samplers.hpp"

using namespace concave_field;

namespace {

// Brute-force oracle: min <q, x> over all basic feasible vertices of
// {x >= 0, <p_i, x> >= a_i}. Enumerates every choice of n active
// constraints among the r inequalities and n sign constraints.
double lp_vertex_oracle(const Vec& q, const std::vector<Vec>& rows, const Vec& a) {
    const std::size_t n = q.size();
    const std::size_t r = rows.size();
    const std::size_t total = r + n;
    std::vector<std::size_t> pick(n, 0);
    double best = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> combo;
    auto solve_active = [&](const std::vector<std::size_t>& active) {
        // Build the n x n system: active constraint rows hold with equality.
        std::vector<Vec> m(n, Vec(n + 1, 0.0));
        for (std::size_t k = 0; k < n; ++k) {
            if (active[k] < r) {
                for (std::size_t j = 0; j < n; ++j) m[k][j] = rows[active[k]][j];
                m[k][n] = a[active[k]];
            } else {
                m[k][active[k] - r] = 1.0; // x_j = 0
            }
        }
        // Gaussian elimination with partial pivoting.
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            for (std::size_t rr = c + 1; rr < n; ++rr)
                if (std::abs(m[rr][c]) > std::abs(m[piv][c])) piv = rr;
            if (std::abs(m[piv][c]) < 1e-12) return;
            std::swap(m[piv], m[c]);
            for (std::size_t rr = 0; rr < n; ++rr) {
                if (rr == c) continue;
                const double f = m[rr][c] / m[c][c];
                for (std::size_t j = c; j <= n; ++j) m[rr][j] -= f * m[c][j];
            }
        }
        Vec x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = m[k][n] / m[k][k];
        for (double xi : x)
            if (xi < -1e-9) return;
        for (std::size_t i = 0; i < r; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * x[j];
            if (lhs < a[i] - 1e-9) return;
        }
        double val = 0.0;
        for (std::size_t j = 0; j < n; ++j) val += q[j] * std::max(x[j], 0.0);
        best = std::min(best, val);
    };

    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (combo.size() == n) {
            solve_active(combo);
            return;
        }
        for (std::size_t i = start; i < total; ++i) {
            combo.push_back(i);
            rec(i + 1);
            combo.pop_back();
        }
    };
    (void)pick;
    rec(0);
    return best;
}

} // namespace

TEST_SUITE_BEGIN("duality_tail");

TEST_CASE("region membership is a strict inequality") {
    RegionSpec spec({SimplexPoint::interior({0.5, 0.5})}, {1.0});
    CHECK_FALSE(region_contains(spec, {1.0, 1.0})); // exactly on the hyperplane
    CHECK(region_contains(spec, {0.5, 0.5}));
    CHECK_FALSE(region_contains(spec, {2.0, 1.5}));
}

TEST_CASE("region union agrees with the componentwise brute force") {
    SplitRng rng(61, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SimplexPoint> pts;
        Vec levels;
        const std::size_t r = 1 + rng.next_u64() % 3;
        for (std::size_t i = 0; i < r; ++i) {
            pts.push_back(random_interior_point(3, rng, 1e-2));
            levels.push_back(rng.uniform(0.2, 2.0));
        }
        RegionSpec spec(pts, levels);
        for (int k = 0; k < 40; ++k) {
            Vec x{rng.uniform(0.01, 4.0), rng.uniform(0.01, 4.0), rng.uniform(0.01, 4.0)};
            double min_slack = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < r; ++i)
                min_slack = std::min(min_slack, dot(pts[i].coords(), x) - levels[i]);
            CHECK(region_contains(spec, x) == (min_slack < 0.0));
        }
    }
}

TEST_CASE("region spec validation") {
    CHECK_THROWS_AS(RegionSpec({SimplexPoint::interior({0.5, 0.5})}, {-1.0}), DomainError);
    CHECK_THROWS_AS(RegionSpec({SimplexPoint::interior({0.5, 0.5}),
                                SimplexPoint::interior({0.5, 0.5})},
                               {1.0, 2.0}),
                    DomainError);
}

TEST_CASE("single-anchor envelope has the a * min(q_i / p_i) closed form") {
    RegionSpec spec({SimplexPoint::interior({0.5, 0.5})}, {1.0});
    const ConcaveFn psi = envelope_from_constraints(spec);
    CHECK(eval(psi, SimplexPoint::interior({0.25, 0.75})) == doctest::Approx(0.5).epsilon(1e-12));
    // Tight at the anchor itself.
    CHECK(eval(psi, SimplexPoint::interior({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));

    SplitRng rng(67, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const SimplexPoint p = random_interior_point(3, rng, 1e-2);
        const double a = rng.uniform(0.1, 3.0);
        RegionSpec s({p}, {a});
        const ConcaveFn e = envelope_from_constraints(s);
        const SimplexPoint q = random_interior_point(3, rng, 1e-3);
        double closed = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < 3; ++i) closed = std::min(closed, a * q[i] / p[i]);
        CHECK(eval(e, q) == doctest::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("envelope evaluation equals the vertex-enumeration oracle") {
    SplitRng rng(71, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 3;
        const std::size_t r = 1 + rng.next_u64() % 4;
        std::vector<SimplexPoint> pts;
        Vec levels;
        for (std::size_t i = 0; i < r; ++i) {
            pts.push_back(random_interior_point(n, rng, 1e-2));
            levels.push_back(rng.uniform(0.1, 2.5));
        }
        RegionSpec spec(pts, levels);
        const ConcaveFn psi = envelope_from_constraints(spec);
        const SimplexPoint q = random_interior_point(n, rng, 1e-3);
        std::vector<Vec> rows;
        for (const auto& p : pts) rows.push_back(p.coords());
        const double oracle = lp_vertex_oracle(q.coords(), rows, levels);
        CHECK(eval(psi, q) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("membership gap locates the region union of the envelope") {
    RegionSpec spec({SimplexPoint::interior({0.5, 0.5})}, {1.0});
    const ConcaveFn psi = envelope_from_constraints(spec);
    CHECK(region_membership_gap(psi, {0.7, 0.7}) < 0.0);   // <p,x> = 0.7 < 1
    CHECK(region_membership_gap(psi, {2.5, 2.5}) > 0.0);   // outside
    // Three-asset version exercises the projected-gradient branch.
    RegionSpec spec3({SimplexPoint::barycenter(3)}, {1.0});
    const ConcaveFn psi3 = envelope_from_constraints(spec3);
    CHECK(region_membership_gap(psi3, {1.0, 1.0, 0.5}) < 0.0);
    CHECK(region_membership_gap(psi3, {4.0, 3.5, 3.2}) > 0.0);
}

TEST_CASE("tail probability: zero function has tail one") {
    SplitRng rng(73, 0);
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    const TailResult t = tail_probability(model, constant_fn(2, 0.0), 1000, rng);
    CHECK(t.tail == 1.0);
    CHECK(t.integral == 0.0);
    CHECK_FALSE(t.diverged);
}

TEST_CASE("tail probability of a single-anchor envelope") {
    SplitRng rng(79, 0);
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    RegionSpec spec({SimplexPoint::interior({0.5, 0.5})}, {1.0});
    const ConcaveFn psi = envelope_from_constraints(spec);
    const TailResult t = tail_probability(model, psi, 60000, rng);
    CHECK_FALSE(t.diverged);
    CHECK(t.integral == doctest::Approx(2.0).epsilon(0.02));
    CHECK(t.tail == doctest::Approx(std::exp(-2.0)).epsilon(0.02));
}

TEST_CASE("tail probability flags the critical geometric mean as divergent") {
    SplitRng rng(83, 0);
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    const TailResult t = tail_probability(model, geometric_mean_fn({0.5, 0.5}), 1000, rng);
    CHECK(t.diverged);
    CHECK(t.tail == 0.0);

    // A positive affine function does not vanish on the boundary at all.
    ConcaveFn plane(PolyhedralMin{{Hyperplane({1.0, 2.0})}});
    CHECK(tail_divergence_screen(model, plane));
}

TEST_CASE("finite-dimensional tail: single and nested regions") {
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    const SimplexPoint p1 = SimplexPoint::interior({0.5, 0.5});
    RegionSpec single({p1}, {1.0});
    CHECK(finite_dim_tail(model, single) ==
          doctest::Approx(std::exp(-model.intensity_integral_R(p1, 1.0))).epsilon(1e-12));

    // a_2 so large that the first region is swallowed by the second.
    const SimplexPoint p2 = SimplexPoint::interior({0.4, 0.6});
    RegionSpec nested({p1, p2}, {0.2, 5.0});
    const double expected = std::exp(-model.intensity_integral_R(p2, 5.0));
    CHECK(finite_dim_tail(model, nested, 400000) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("finite-dimensional tail equals the tail of the minimal envelope") {
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    std::vector<SimplexPoint> pts{SimplexPoint::interior({0.3, 0.7}),
                                  SimplexPoint::interior({0.6, 0.4})};
    RegionSpec spec(pts, {0.4, 0.5});
    const double direct = finite_dim_tail(model, spec, 400000);
    SplitRng rng(89, 0);
    const TailResult via_psi =
        tail_probability(model, envelope_from_constraints(spec), 60000, rng);
    CHECK(direct == doctest::Approx(via_psi.tail).epsilon(0.03));
}

TEST_CASE("envelope lower-bounds any concave witness through the anchors") {
    // Poisson envelopes that dominate the anchors must dominate the minimal
    // envelope everywhere.
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    std::vector<SimplexPoint> pts{SimplexPoint::interior({0.35, 0.65}),
                                  SimplexPoint::interior({0.7, 0.3})};
    const Vec levels{0.3, 0.35};
    RegionSpec spec(pts, levels);
    const ConcaveFn psi = envelope_from_constraints(spec);
    const auto grid = interior_grid(2, 33);

    SplitRng rng(97, 0);
    int kept = 0;
    for (int replica = 0; replica < 200 && kept < 25; ++replica) {
        const PoissonEnvelope env = sample_poisson_envelope_at(model, pts, rng);
        const ConcaveFn omega = env.envelope();
        bool dominates = true;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (eval(omega, pts[i]) < levels[i]) dominates = false;
        if (!dominates) continue;
        ++kept;
        for (const SimplexPoint& q : grid) CHECK(eval(omega, q) >= eval(psi, q) - 1e-9);
    }
    CHECK(kept > 0);
}

TEST_CASE("support-function route lower-bounds a polyhedral function") {
    SplitRng rng(101, 0);
    PolyhedralMin rep;
    rep.planes.emplace_back(Vec{0.8, 1.6});
    rep.planes.emplace_back(Vec{1.5, 0.6});
    const ConcaveFn f(std::move(rep));
    // Anchors strictly inside each plane's active cell.
    std::vector<SimplexPoint> pts{SimplexPoint::interior({0.2, 0.8}),
                                  SimplexPoint::interior({0.85, 0.15})};
    Vec levels{eval(f, pts[0]), eval(f, pts[1])};
    RegionSpec spec(pts, levels);
    const ConcaveFn psi = envelope_from_constraints(spec);
    for (const SimplexPoint& q : interior_grid(2, 65))
        CHECK(eval(psi, q) <= eval(f, q) + 1e-9);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(eval(psi, pts[i]) == doctest::Approx(levels[i]).epsilon(1e-10));
}

TEST_CASE("tail monotone and scaling in the generator") {
    const auto model = CoefficientModel::constant_intensity(2, 1.0);
    const SimplexPoint p = SimplexPoint::interior({0.5, 0.5});
    const double base_integral = model.intensity_integral_R(p, 1.0);
    for (double t : {0.5, 2.0}) {
        RegionSpec scaled({p}, {t});
        const double tail = finite_dim_tail(model, scaled);
        CHECK(tail == doctest::Approx(std::exp(-std::pow(t, 2.0) * base_integral)).epsilon(1e-9));
    }
    // psi1 <= psi2 implies tail(psi1) >= tail(psi2).
    CHECK(finite_dim_tail(model, RegionSpec({p}, {0.5})) >
          finite_dim_tail(model, RegionSpec({p}, {2.0})));
}

TEST_SUITE_END();
