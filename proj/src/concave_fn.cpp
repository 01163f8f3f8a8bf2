#include "concave_field/concave_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "concave_field/errors.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/softmin.hpp"

namespace concave_field {

Hyperplane::Hyperplane(Vec coeffs) : x(std::move(coeffs)) {
    if (x.size() < 2) throw DomainError("Hyperplane: dimension must be >= 2");
    for (double c : x)
        if (!(c > 0.0)) throw DomainError("Hyperplane: all coefficients must be > 0");
}

ConcaveFn::ConcaveFn(PolyhedralMin rep) : rep_(std::make_shared<Rep>(std::move(rep))) {}
ConcaveFn::ConcaveFn(SoftminEnsemble rep) : rep_(std::make_shared<Rep>(std::move(rep))) {}
ConcaveFn::ConcaveFn(Analytic rep) : rep_(std::make_shared<Rep>(std::move(rep))) {}

bool ConcaveFn::is_polyhedral() const { return std::holds_alternative<PolyhedralMin>(*rep_); }

bool ConcaveFn::is_nonneg() const {
    if (const auto* a = std::get_if<Analytic>(rep_.get())) return a->nonneg;
    if (const auto* s = std::get_if<SoftminEnsemble>(rep_.get()))
        return s->offset >= 0.0 && s->scale > 0.0;
    return true; // positive-plane minimum
}

std::size_t ConcaveFn::dim_hint() const {
    if (const auto* m = std::get_if<PolyhedralMin>(rep_.get()))
        return m->planes.empty() ? 0 : m->planes.front().dim();
    if (const auto* s = std::get_if<SoftminEnsemble>(rep_.get()))
        return s->planes.empty() ? 0 : s->planes.front().dim();
    return 0;
}

const PolyhedralMin* ConcaveFn::as_polyhedral() const {
    return std::get_if<PolyhedralMin>(rep_.get());
}
const SoftminEnsemble* ConcaveFn::as_softmin() const {
    return std::get_if<SoftminEnsemble>(rep_.get());
}
const Analytic* ConcaveFn::as_analytic() const { return std::get_if<Analytic>(rep_.get()); }

namespace {

double plane_values_min(const std::vector<Hyperplane>& planes, const Vec& p) {
    if (planes.empty()) throw EmptyEnsembleError("eval: empty plane list");
    double m = std::numeric_limits<double>::infinity();
    for (const Hyperplane& h : planes) m = std::min(m, dot(p, h.x));
    return m;
}

} // namespace

double eval_raw(const ConcaveFn& f, const Vec& p) {
    if (const auto* m = f.as_polyhedral()) return plane_values_min(m->planes, p);
    if (const auto* s = f.as_softmin()) {
        if (s->planes.empty()) throw EmptyEnsembleError("eval: empty ensemble");
        double vmin = std::numeric_limits<double>::infinity();
        for (const Hyperplane& h : s->planes) vmin = std::min(vmin, dot(p, h.x));
        if (is_hardmin(s->lambda)) return s->scale * vmin + s->offset;
        double sum = 0.0;
        for (const Hyperplane& h : s->planes) sum += std::exp(-s->lambda * (dot(p, h.x) - vmin));
        const double k = static_cast<double>(s->planes.size());
        const double soft = vmin + (std::log(k) - std::log(sum)) / s->lambda;
        return s->scale * soft + s->offset;
    }
    const auto* a = f.as_analytic();
    return a->eval(p);
}

double eval(const ConcaveFn& f, const SimplexPoint& p) { return eval_raw(f, p.coords()); }

GradientResult gradient(const ConcaveFn& f, const SimplexPoint& p) {
    if (!p.is_interior()) throw DomainError("gradient: point must be interior");
    const Vec& pc = p.coords();
    const std::size_t n = pc.size();

    if (const auto* m = f.as_polyhedral()) {
        if (m->planes.empty()) throw EmptyEnsembleError("gradient: empty plane list");
        std::size_t best = 0;
        double vmin = dot(pc, m->planes[0].x);
        for (std::size_t k = 1; k < m->planes.size(); ++k) {
            const double v = dot(pc, m->planes[k].x);
            if (v < vmin) {
                vmin = v;
                best = k;
            }
        }
        bool tie = false;
        for (std::size_t k = 0; k < m->planes.size(); ++k) {
            if (k == best) continue;
            if (std::abs(dot(pc, m->planes[k].x) - vmin) <= 1e-12) tie = true;
        }
        return GradientResult{m->planes[best].x, tie};
    }

    if (const auto* s = f.as_softmin()) {
        if (s->planes.empty()) throw EmptyEnsembleError("gradient: empty ensemble");
        if (is_hardmin(s->lambda)) {
            // Hardmin ensemble: same rule as the polyhedral case, times scale.
            GradientResult g = gradient(ConcaveFn(PolyhedralMin{s->planes}), p);
            for (double& c : g.grad) c *= s->scale;
            return g;
        }
        std::vector<double> vals(s->planes.size());
        double vmin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < s->planes.size(); ++k) {
            vals[k] = dot(pc, s->planes[k].x);
            vmin = std::min(vmin, vals[k]);
        }
        double wsum = 0.0;
        std::vector<double> w(vals.size());
        for (std::size_t k = 0; k < vals.size(); ++k) {
            w[k] = std::exp(-s->lambda * (vals[k] - vmin));
            wsum += w[k];
        }
        Vec g(n, 0.0);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const double wk = s->scale * w[k] / wsum;
            for (std::size_t i = 0; i < n; ++i) g[i] += wk * s->planes[k].x[i];
        }
        return GradientResult{std::move(g), false};
    }

    const auto* a = f.as_analytic();
    if (a->grad) return GradientResult{a->grad(pc), false};
    // Central differences; the evaluator accepts off-simplex positive points.
    const double h = 1e-6;
    Vec g(n, 0.0);
    Vec q = pc;
    for (std::size_t i = 0; i < n; ++i) {
        const double step = std::min(h, 0.5 * pc[i]);
        q[i] = pc[i] + step;
        const double up = a->eval(q);
        q[i] = pc[i] - step;
        const double dn = a->eval(q);
        q[i] = pc[i];
        g[i] = (up - dn) / (2.0 * step);
    }
    return GradientResult{std::move(g), false};
}

double metric_d(const ConcaveFn& f, const ConcaveFn& g, std::size_t n, std::size_t k_max,
                std::size_t grid) {
    if (k_max < n) throw DomainError("metric_d: k_max must be >= n");
    if (grid < 2) throw DomainError("metric_d: grid must be >= 2");
    double total = 0.0;
    for (std::size_t k = n; k <= k_max; ++k) {
        double sup = 0.0;
        for (const SimplexPoint& p : slice_grid(CompactSlice(n, k, grid)))
            sup = std::max(sup, std::abs(eval(f, p) - eval(g, p)));
        total += std::ldexp(std::min(sup, 1.0), -static_cast<int>(k));
    }
    return total;
}

double concave_bound_constant(const SimplexPoint& q) {
    const double n = static_cast<double>(q.dim());
    // Faces {p_i = 0} are at distance q_i * sqrt(n/(n-1)) within the affine
    // hull; the diameter of the closed simplex is sqrt(2).
    const double dist = q.min_coord() * std::sqrt(n / (n - 1.0));
    return std::sqrt(2.0) / dist;
}

ConcaveBoundReport check_concave_bounds(const ConcaveFn& f, const SimplexPoint& q,
                                        std::size_t samples, SplitRng& rng) {
    if (!f.is_nonneg()) throw DomainError("check_concave_bounds: needs a non-negative function");
    const std::size_t n = q.dim();
    const double mq = concave_bound_constant(q);
    const double fq = eval(f, q);
    const double fbar = eval(f, SimplexPoint::barycenter(n));
    ConcaveBoundReport report;
    report.samples = samples;
    report.anchor_constant = mq;
    for (std::size_t s = 0; s < samples; ++s) {
        const SimplexPoint p = random_interior_point(n, rng);
        const double v = eval(f, p);
        report.max_violation_anchor = std::max(report.max_violation_anchor, v - mq * fq);
        report.max_violation_center =
            std::max(report.max_violation_center, v - static_cast<double>(n) * fbar);
    }
    return report;
}

ConcaveFn geometric_mean_fn(Vec weights) {
    double s = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw DomainError("geometric_mean_fn: weights must be >= 0");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-9) throw DomainError("geometric_mean_fn: weights must sum to 1");
    Analytic a;
    a.label = "geometric-mean";
    a.nonneg = true;
    a.eval = [w = weights](const Vec& p) {
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (w[i] == 0.0) continue;
            acc += w[i] * std::log(p[i]);
        }
        return std::exp(acc);
    };
    a.grad = [w = weights](const Vec& p) {
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (w[i] != 0.0) acc += w[i] * std::log(p[i]);
        const double val = std::exp(acc);
        Vec g(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) g[i] = val * w[i] / p[i];
        return g;
    };
    return ConcaveFn(std::move(a));
}

ConcaveFn constant_fn(std::size_t n, double c) {
    Analytic a;
    a.label = "constant";
    a.nonneg = c >= 0.0;
    a.eval = [c](const Vec&) { return c; };
    a.grad = [n, c](const Vec&) {
        (void)c;
        return Vec(n, 0.0);
    };
    return ConcaveFn(std::move(a));
}

} // namespace concave_field
