#include "concave_field/duality.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>

#include "concave_field/errors.hpp"
#include "concave_field/lp.hpp"
#include "concave_field/rng.hpp"

namespace concave_field {

RegionSpec::RegionSpec(std::vector<SimplexPoint> pts, Vec lvls)
    : points(std::move(pts)), levels(std::move(lvls)) {
    if (points.empty() || points.size() != levels.size())
        throw DomainError("RegionSpec: need r >= 1 anchors with matching levels");
    const std::size_t n = points.front().dim();
    for (const SimplexPoint& p : points)
        if (p.dim() != n) throw DomainError("RegionSpec: mixed dimensions");
    for (double a : levels)
        if (!(a > 0.0)) throw DomainError("RegionSpec: levels must be > 0");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double diff = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                diff = std::max(diff, std::abs(points[i][k] - points[j][k]));
            if (diff <= 1e-12) throw DomainError("RegionSpec: anchor points must be distinct");
        }
}

bool region_contains(const RegionSpec& spec, const Vec& x) {
    for (std::size_t i = 0; i < spec.r(); ++i)
        if (dot(spec.points[i].coords(), x) < spec.levels[i]) return true;
    return false;
}

ConcaveFn envelope_from_constraints(const RegionSpec& spec) {
    std::vector<Vec> rows;
    rows.reserve(spec.r());
    for (const SimplexPoint& p : spec.points) rows.push_back(p.coords());
    Analytic a;
    a.label = "minimal-envelope";
    a.nonneg = true;
    a.eval = [rows, levels = spec.levels](const Vec& q) {
        const LpSolution sol = lp_solve_min(q, rows, levels);
        if (sol.status != LpStatus::Optimal)
            throw NumericalFailure("envelope evaluation: LP did not reach an optimum");
        return sol.value;
    };
    return ConcaveFn(std::move(a));
}

namespace {

// Euclidean projection onto the closed simplex (Duchi et al. sort form).
Vec project_simplex(Vec v) {
    Vec u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    for (double& c : v) c = std::max(0.0, c - theta);
    return v;
}

double golden_min_1d(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int k = 0; k < iters; ++k) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::min(fc, fd);
}

} // namespace

double region_membership_gap(const ConcaveFn& psi, const Vec& x, std::size_t coarse_grid,
                             double tol) {
    const std::size_t n = x.size();
    auto gap = [&](const Vec& p) { return dot(p, x) - eval_raw(psi, p); };

    // Exact early exit: <p, x> >= min_i x_i everywhere, and a non-negative
    // concave psi is capped by n psi(center), so such x cannot be inside.
    if (psi.is_nonneg()) {
        double xmin = std::numeric_limits<double>::infinity();
        for (double xi : x) xmin = std::min(xmin, xi);
        const double cap =
            static_cast<double>(n) * eval(psi, SimplexPoint::barycenter(n));
        if (xmin >= cap) return xmin - cap;
    }

    double best = std::numeric_limits<double>::infinity();
    Vec best_p;
    for (const SimplexPoint& p : interior_grid(n, coarse_grid, 1e-9)) {
        const double g = gap(p.coords());
        if (g < best) {
            best = g;
            best_p = p.coords();
        }
    }
    if (best < -1e3 * tol) return best; // clearly inside, skip refinement

    if (n == 2) {
        const double spacing = 1.0 / static_cast<double>(coarse_grid - 1);
        const double lo = std::max(0.0, best_p[0] - spacing);
        const double hi = std::min(1.0, best_p[0] + spacing);
        const double refined =
            golden_min_1d([&](double q) { return gap(Vec{q, 1.0 - q}); }, lo, hi, 60);
        return std::min(best, refined);
    }

    // Projected gradient with backtracking; the objective is convex.
    Vec p = best_p;
    double fp = best;
    double step = 0.25;
    for (int iter = 0; iter < 200; ++iter) {
        Vec interior = p;
        for (double& c : interior) c = std::max(c, 1e-9);
        const GradientResult gr = gradient(psi, SimplexPoint::interior_renormalized(interior));
        Vec dir(n);
        for (std::size_t i = 0; i < n; ++i) dir[i] = x[i] - gr.grad[i];
        bool improved = false;
        while (step > 1e-14) {
            Vec cand(n);
            for (std::size_t i = 0; i < n; ++i) cand[i] = p[i] - step * dir[i];
            cand = project_simplex(std::move(cand));
            const double fc = gap(cand);
            if (fc < fp - 1e-16) {
                p = std::move(cand);
                fp = fc;
                improved = true;
                step *= 1.3;
                break;
            }
            step *= 0.5;
        }
        if (!improved || step <= 1e-14) break;
        if (fp < best - tol && fp < -tol) break; // sign settled
    }
    return std::min(best, fp);
}

bool tail_divergence_screen(const CoefficientModel& model, const ConcaveFn& psi) {
    const std::size_t n = model.dim();
    const double npa = static_cast<double>(n) + model.alpha();
    const double scale = std::max(1.0, eval(psi, SimplexPoint::barycenter(n)));
    for (std::size_t j = 0; j < n; ++j) {
        const double pi_j = (1.0 + model.alpha_exponents()[j]) / npa;
        const double eps_hi = 1e-2, eps_lo = 1e-4;
        const double v_hi = eval(psi, face_center(n, j, eps_hi));
        const double v_lo = eval(psi, face_center(n, j, eps_lo));
        if (v_lo <= 1e-12 * scale) continue; // vanishes fast enough
        const double slope = std::log(v_hi / v_lo) / std::log(eps_hi / eps_lo);
        // Decay at or below the critical exponent makes the h-integral of the
        // region union infinite; 0.02 is a screening margin.
        if (slope <= pi_j + 0.02) return true;
    }
    return false;
}

TailResult tail_probability(const CoefficientModel& model, const ConcaveFn& psi,
                            std::size_t mc_points, SplitRng& rng) {
    if (!psi.is_nonneg()) throw DomainError("tail_probability: psi must be non-negative");
    const std::size_t n = model.dim();
    TailResult out;

    const double center = eval(psi, SimplexPoint::barycenter(n));
    if (center <= 0.0) return out; // psi == 0: empty region, tail 1

    if (tail_divergence_screen(model, psi)) {
        out.diverged = true;
        out.tail = 0.0;
        out.integral = std::numeric_limits<double>::infinity();
        return out;
    }

    // Bounding box: x in the union implies x_i < psi(p)/p_i for the witness p,
    // so sup_p psi(p)/p_i bounds coordinate i. The sup is approached on a
    // lattice plus ladders toward every face, then padded.
    Vec box(n, 0.0);
    auto absorb = [&](const SimplexPoint& p) {
        const double v = eval(psi, p);
        for (std::size_t i = 0; i < n; ++i) box[i] = std::max(box[i], v / p[i]);
    };
    for (const SimplexPoint& p : interior_grid(n, n == 2 ? 65 : 21, 1e-9)) absorb(p);
    for (std::size_t j = 0; j < n; ++j)
        for (double eps : {3e-2, 1e-2, 3e-3, 1e-3, 1e-4, 1e-5, 1e-6}) {
            if (n == 2) {
                absorb(face_center(n, j, eps));
            } else {
                for (const SimplexPoint& s : interior_grid(n - 1, 7, 1e-9)) {
                    Vec p(n);
                    std::size_t t = 0;
                    for (std::size_t i = 0; i < n; ++i)
                        p[i] = i == j ? eps : (1.0 - eps) * s[t++];
                    absorb(SimplexPoint::interior_renormalized(p));
                }
            }
        }
    for (double& b : box) b = 1.5 * b + 1e-9;
    out.box = box;

    // Importance sampling from h restricted to the box: coordinates are
    // independent with density prop. to x^{alpha_i}, so h / proposal is the
    // constant Z = integral of h over the box.
    const Vec& ae = model.alpha_exponents();
    double log_z = std::log(model.gamma_coeff());
    for (std::size_t i = 0; i < n; ++i)
        log_z += (1.0 + ae[i]) * std::log(box[i]) - std::log1p(ae[i]);
    const double z_box = std::exp(log_z);

    std::size_t hits = 0;
    Vec x(n);
    for (std::size_t k = 0; k < mc_points; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = box[i] * std::pow(rng.next_double_pos(), 1.0 / (1.0 + ae[i]));
        if (region_membership_gap(psi, x) < 0.0) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(mc_points);
    out.integral = z_box * phat;
    out.stderr_integral =
        z_box * std::sqrt(std::max(phat * (1.0 - phat), 1e-12) / static_cast<double>(mc_points));
    out.tail = std::exp(-out.integral);
    out.stderr_tail = out.tail * out.stderr_integral;
    return out;
}

namespace {

// Monte Carlo h-integral of the intersection of the listed regions, sampled
// from h restricted to the componentwise-min bounding box.
double intersection_integral_mc(const CoefficientModel& model, const RegionSpec& spec,
                                const std::vector<std::size_t>& subset, std::size_t points,
                                SplitRng& rng) {
    const std::size_t n = spec.n();
    const Vec& ae = model.alpha_exponents();
    Vec box(n, std::numeric_limits<double>::infinity());
    for (std::size_t idx : subset)
        for (std::size_t i = 0; i < n; ++i)
            box[i] = std::min(box[i], spec.levels[idx] / spec.points[idx][i]);
    double log_z = std::log(model.gamma_coeff());
    for (std::size_t i = 0; i < n; ++i)
        log_z += (1.0 + ae[i]) * std::log(box[i]) - std::log1p(ae[i]);
    const double z_box = std::exp(log_z);
    std::size_t hits = 0;
    Vec x(n);
    for (std::size_t k = 0; k < points; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = box[i] * std::pow(rng.next_double_pos(), 1.0 / (1.0 + ae[i]));
        bool in_all = true;
        for (std::size_t idx : subset)
            if (!(dot(spec.points[idx].coords(), x) < spec.levels[idx])) {
                in_all = false;
                break;
            }
        if (in_all) ++hits;
    }
    return z_box * static_cast<double>(hits) / static_cast<double>(points);
}

double union_integral_mc(const CoefficientModel& model, const RegionSpec& spec,
                         std::size_t points, SplitRng& rng) {
    const std::size_t n = spec.n();
    const Vec& ae = model.alpha_exponents();
    Vec box(n, 0.0);
    for (std::size_t idx = 0; idx < spec.r(); ++idx)
        for (std::size_t i = 0; i < n; ++i)
            box[i] = std::max(box[i], spec.levels[idx] / spec.points[idx][i]);
    double log_z = std::log(model.gamma_coeff());
    for (std::size_t i = 0; i < n; ++i)
        log_z += (1.0 + ae[i]) * std::log(box[i]) - std::log1p(ae[i]);
    const double z_box = std::exp(log_z);
    std::size_t hits = 0;
    Vec x(n);
    for (std::size_t k = 0; k < points; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = box[i] * std::pow(rng.next_double_pos(), 1.0 / (1.0 + ae[i]));
        if (region_contains(spec, x)) ++hits;
    }
    return z_box * static_cast<double>(hits) / static_cast<double>(points);
}

} // namespace

double finite_dim_tail(const CoefficientModel& model, const RegionSpec& spec,
                       std::size_t mc_points, std::uint64_t seed) {
    const std::size_t r = spec.r();
    double integral = 0.0;
    if (r <= 3) {
        // Inclusion-exclusion; singles in closed form, overlaps by Monte Carlo.
        std::uint64_t term = 0;
        for (std::size_t i = 0; i < r; ++i)
            integral += model.intensity_integral_R(spec.points[i], spec.levels[i]);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                SplitRng rng(seed, ++term);
                integral -= intersection_integral_mc(model, spec, {i, j}, mc_points, rng);
            }
        if (r == 3) {
            SplitRng rng(seed, ++term);
            integral += intersection_integral_mc(model, spec, {0, 1, 2}, mc_points, rng);
        }
    } else {
        SplitRng rng(seed, 0);
        integral = union_integral_mc(model, spec, mc_points, rng);
    }
    return std::exp(-integral);
}

} // namespace concave_field
