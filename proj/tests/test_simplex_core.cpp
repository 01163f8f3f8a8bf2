#include <doctest.h>

#include <cmath>
#include <vector>

#include "concave_field/concave_fn.hpp"
#include "concave_field/errors.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/simplex.hpp"

using namespace concave_field;

namespace {

ConcaveFn random_polyhedral(std::size_t n, std::size_t planes, SplitRng& rng) {
    PolyhedralMin rep;
    for (std::size_t k = 0; k < planes; ++k) {
        Vec x(n);
        for (double& c : x) c = rng.uniform(0.05, 3.0);
        rep.planes.emplace_back(std::move(x));
    }
    return ConcaveFn(std::move(rep));
}

} // namespace

TEST_SUITE_BEGIN("simplex_core");

TEST_CASE("simplex point validation") {
    CHECK_THROWS_AS(SimplexPoint::interior({0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(SimplexPoint::interior({1.0, 0.0}), DomainError);
    CHECK_NOTHROW(SimplexPoint::boundary({1.0, 0.0}));
    const auto p = SimplexPoint::interior({0.25, 0.75});
    CHECK(p.min_coord() == 0.25);
    CHECK(SimplexPoint::barycenter(3)[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("hyperplane evaluates to its vertex values") {
    Hyperplane h({1.5, 2.5, 0.5});
    CHECK(h.eval(SimplexPoint::boundary({1.0, 0.0, 0.0})) == 1.5);
    CHECK(h.eval(SimplexPoint::boundary({0.0, 1.0, 0.0})) == 2.5);
    CHECK(h.eval(SimplexPoint::boundary({0.0, 0.0, 1.0})) == 0.5);
    CHECK_THROWS_AS(Hyperplane({1.0, -0.5}), DomainError);
}

TEST_CASE("polyhedral eval is the exact minimum of the planes") {
    PolyhedralMin rep;
    rep.planes.emplace_back(Vec{1.0, 3.0});
    rep.planes.emplace_back(Vec{2.0, 1.0});
    ConcaveFn f(std::move(rep));
    const auto p = SimplexPoint::interior({0.5, 0.5});
    CHECK(eval(f, p) == 1.5);

    ConcaveFn c(PolyhedralMin{{Hyperplane({0.7, 0.7, 0.7})}});
    CHECK(eval(c, SimplexPoint::barycenter(3)) == doctest::Approx(0.7).epsilon(1e-15));

    ConcaveFn empty{PolyhedralMin{}};
    CHECK_THROWS_AS(eval(empty, p), EmptyEnsembleError);
}

TEST_CASE("polyhedral eval matches a brute-force scan on a grid") {
    SplitRng rng(41, 0);
    const ConcaveFn f = random_polyhedral(2, 3, rng);
    const auto* rep = f.as_polyhedral();
    for (const SimplexPoint& p : interior_grid(2, 50)) {
        double brute = 1e300;
        for (const auto& pl : rep->planes) brute = std::min(brute, dot(p.coords(), pl.x));
        CHECK(eval(f, p) == doctest::Approx(brute).epsilon(1e-15));
    }
}

TEST_CASE("gradient of the active plane, with tie flagging") {
    PolyhedralMin rep;
    rep.planes.emplace_back(Vec{1.0, 3.0});
    rep.planes.emplace_back(Vec{2.0, 1.0});
    ConcaveFn f(std::move(rep));

    auto g = gradient(f, SimplexPoint::interior({0.9, 0.1}));
    CHECK_FALSE(g.tie);
    CHECK(g.grad == Vec{1.0, 3.0});

    // Planes cross where <p,(1,3)> = <p,(2,1)>: p = (2/3, 1/3).
    auto t = gradient(f, SimplexPoint::interior({2.0 / 3.0, 1.0 / 3.0}));
    CHECK(t.tie);
    CHECK(t.grad == Vec{1.0, 3.0}); // lowest index wins
}

TEST_CASE("analytic gradient of the geometric mean") {
    ConcaveFn gm = geometric_mean_fn({0.5, 0.5});
    auto g = gradient(gm, SimplexPoint::interior({0.5, 0.5}));
    CHECK(g.grad[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.grad[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("softmin ensemble gradient agrees with finite differences") {
    SplitRng rng(17, 0);
    SoftminEnsemble rep;
    for (int k = 0; k < 6; ++k) {
        Vec x(3);
        for (double& c : x) c = rng.uniform(0.2, 2.0);
        rep.planes.emplace_back(std::move(x));
    }
    rep.lambda = 4.0;
    ConcaveFn f(std::move(rep));
    for (int trial = 0; trial < 20; ++trial) {
        const SimplexPoint p = random_interior_point(3, rng, 1e-3);
        const auto g = gradient(f, p);
        const double h = 1e-6;
        for (std::size_t i = 0; i < 3; ++i) {
            Vec up = p.coords(), dn = p.coords();
            up[i] += h;
            dn[i] -= h;
            const double fd = (eval_raw(f, up) - eval_raw(f, dn)) / (2.0 * h);
            CHECK(std::abs(g.grad[i] - fd) <= 1e-5);
        }
    }
}

TEST_CASE("gradient consistency <p, grad> == eval for tie-free polyhedral") {
    SplitRng rng(23, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const ConcaveFn f = random_polyhedral(3, 5, rng);
        const SimplexPoint p = random_interior_point(3, rng);
        const auto g = gradient(f, p);
        if (g.tie) continue;
        CHECK(dot(p.coords(), g.grad) == doctest::Approx(eval(f, p)).epsilon(1e-15));
    }
}

TEST_CASE("metric_d basics") {
    SplitRng rng(3, 0);
    const ConcaveFn f = random_polyhedral(2, 4, rng);
    CHECK(metric_d(f, f, 2, 12, 16) == 0.0);

    const ConcaveFn zero = constant_fn(2, 0.0);
    const ConcaveFn one = constant_fn(2, 1.0);
    double expected = 0.0;
    for (int k = 2; k <= 12; ++k) expected += std::ldexp(1.0, -k);
    CHECK(metric_d(zero, one, 2, 12, 8) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("metric_d grid refinement converges") {
    SplitRng rng(5, 0);
    const ConcaveFn f = random_polyhedral(2, 3, rng);
    const ConcaveFn g = random_polyhedral(2, 4, rng);
    const double coarse = metric_d(f, g, 2, 20, 64);
    const double fine = metric_d(f, g, 2, 20, 512);
    CHECK(std::abs(coarse - fine) <= 1e-3);
    CHECK(coarse <= fine + 1e-12); // lattice sup only grows with refinement
}

TEST_CASE("metric_d is a pseudometric on sampled triples") {
    SplitRng rng(29, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const ConcaveFn a = random_polyhedral(2, 3, rng);
        const ConcaveFn b = random_polyhedral(2, 3, rng);
        const ConcaveFn c = random_polyhedral(2, 3, rng);
        const double ab = metric_d(a, b, 2, 10, 24);
        const double ba = metric_d(b, a, 2, 10, 24);
        const double bc = metric_d(b, c, 2, 10, 24);
        const double ac = metric_d(a, c, 2, 10, 24);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("concave bounds: constants and a single plane") {
    SplitRng rng(31, 0);
    const auto q = SimplexPoint::interior({0.3, 0.7});

    auto report = check_concave_bounds(constant_fn(2, 2.5), q, 200, rng);
    CHECK(report.max_violation_anchor <= 1e-9);
    CHECK(report.max_violation_center <= 1e-9);

    // Affine case by hand: f = <p, (1,2)>, max over the simplex is 2,
    // and n f(barycenter) = 2 * 1.5 = 3.
    ConcaveFn plane(PolyhedralMin{{Hyperplane({1.0, 2.0})}});
    report = check_concave_bounds(plane, q, 500, rng);
    CHECK(report.max_violation_center <= 1e-9);
    CHECK(report.max_violation_anchor <= 1e-9);
}

TEST_CASE("concave bounds: no violations over random polyhedral functions") {
    SplitRng rng(37, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const ConcaveFn f = random_polyhedral(n, 1 + rng.next_u64() % 6, rng);
        const SimplexPoint q = random_interior_point(n, rng, 1e-2);
        const auto report = check_concave_bounds(f, q, 1000, rng);
        CHECK(report.max_violation_anchor <= 1e-9);
        CHECK(report.max_violation_center <= 1e-9);
    }
}

TEST_CASE("midpoint concavity for every representation") {
    SplitRng rng(43, 0);
    std::vector<ConcaveFn> fns;
    fns.push_back(random_polyhedral(2, 5, rng));
    fns.push_back(geometric_mean_fn({0.4, 0.6}));
    SoftminEnsemble se;
    se.planes = {Hyperplane({0.5, 1.5}), Hyperplane({1.2, 0.8}), Hyperplane({2.0, 0.3})};
    se.lambda = 3.0;
    fns.emplace_back(std::move(se));

    for (const ConcaveFn& f : fns) {
        for (int trial = 0; trial < 300; ++trial) {
            const SimplexPoint p = random_interior_point(2, rng);
            const SimplexPoint q = random_interior_point(2, rng);
            Vec mid(2);
            for (std::size_t i = 0; i < 2; ++i) mid[i] = 0.5 * (p[i] + q[i]);
            const double fm = eval_raw(f, mid);
            CHECK(fm >= 0.5 * (eval(f, p) + eval(f, q)) - 1e-9);
        }
    }
}

TEST_CASE("slice grids stay inside their slice") {
    for (std::size_t k : {3, 5, 9}) {
        for (const SimplexPoint& p : slice_grid(CompactSlice(3, k, 6))) {
            CHECK(p.min_coord() >= 1.0 / static_cast<double>(k) - 1e-12);
            double s = 0.0;
            for (double c : p.coords()) s += c;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(CompactSlice(3, 2, 4), DomainError);
}

TEST_SUITE_END();
