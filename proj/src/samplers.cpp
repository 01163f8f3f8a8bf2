#include "concave_field/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "concave_field/errors.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/special.hpp"

namespace concave_field {

HardminSampleSpec::HardminSampleSpec(CoefficientModel m, std::size_t k)
    : model(std::move(m)), K(k) {
    if (K < 1) throw DomainError("HardminSampleSpec: K must be >= 1");
    if (!model.sampleable()) throw NotSampleableError("HardminSampleSpec: model has no law of C");
    if (!(static_cast<double>(model.dim()) + model.alpha() > 0.0))
        throw DomainError("HardminSampleSpec: n + alpha must be > 0");
}

double HardminSampleSpec::scale() const {
    return std::pow(static_cast<double>(K),
                    1.0 / (static_cast<double>(model.dim()) + model.alpha()));
}

DiagonalSpec::DiagonalSpec(CoefficientModel m, DiagonalRegime r, double c_, std::size_t k)
    : model(std::move(m)), regime(r), c(c_), K(k) {
    if (K < 3) throw DomainError("DiagonalSpec: K must be >= 3 (log K degenerate below)");
    if (!(c > 0.0)) throw DomainError("DiagonalSpec: c must be > 0");
    if (!model.sampleable()) throw NotSampleableError("DiagonalSpec: model has no law of C");
}

double DiagonalSpec::scale() const {
    return std::pow(static_cast<double>(K),
                    1.0 / (static_cast<double>(model.dim()) + model.alpha()));
}

double DiagonalSpec::lambda_K() const {
    const double log_k = std::log(static_cast<double>(K));
    switch (regime) {
        case DiagonalRegime::SuperLog: return scale() * log_k * log_k;
        case DiagonalRegime::LogShift: return c * scale() * log_k;
        case DiagonalRegime::Linear: return c * scale();
    }
    return scale();
}

double DiagonalSpec::offset() const {
    return -scale() * std::log(static_cast<double>(K)) / lambda_K();
}

ConcaveFn sample_softmin_fixed_lambda(const CoefficientModel& model, std::size_t K, double lambda,
                                      SplitRng& rng) {
    if (K < 1) throw DomainError("sample_softmin_fixed_lambda: K must be >= 1");
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw DomainError("sample_softmin_fixed_lambda: lambda must be finite positive");
    SoftminEnsemble rep;
    rep.lambda = lambda;
    rep.planes.reserve(K);
    for (std::size_t k = 0; k < K; ++k) rep.planes.emplace_back(model.sample_C(rng));
    return ConcaveFn(std::move(rep));
}

double eval_deterministic_limit(const CoefficientModel& model, double lambda,
                                const SimplexPoint& p) {
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw DomainError("eval_deterministic_limit: lambda must be finite positive");
    Vec t(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) t[i] = -lambda * p[i];
    return -model.cgf(t) / lambda;
}

ConcaveFn deterministic_limit_fn(const CoefficientModel& model, double lambda) {
    if (!model.has_cgf()) throw UnsupportedError("deterministic_limit_fn: model has no CGF");
    Analytic a;
    a.label = "softmin-limit";
    a.nonneg = true;
    a.eval = [model, lambda](const Vec& p) {
        Vec t(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) t[i] = -lambda * p[i];
        return -model.cgf(t) / lambda;
    };
    return ConcaveFn(std::move(a));
}

ConcaveFn sample_hardmin_scaled(const HardminSampleSpec& spec, SplitRng& rng) {
    const double a_k = spec.scale();
    PolyhedralMin rep;
    rep.planes.reserve(spec.K);
    for (std::size_t k = 0; k < spec.K; ++k) {
        Vec c = spec.model.sample_C(rng);
        for (double& v : c) v *= a_k;
        rep.planes.emplace_back(std::move(c));
    }
    return ConcaveFn(std::move(rep));
}

Vec hardmin_values_at(const HardminSampleSpec& spec, const std::vector<SimplexPoint>& at,
                      SplitRng& rng) {
    Vec mins(at.size(), std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < spec.K; ++k) {
        const Vec c = spec.model.sample_C(rng);
        for (std::size_t j = 0; j < at.size(); ++j)
            mins[j] = std::min(mins[j], dot(at[j].coords(), c));
    }
    const double a_k = spec.scale();
    for (double& v : mins) v *= a_k;
    return mins;
}

Vec diagonal_values_at(const DiagonalSpec& spec, const std::vector<SimplexPoint>& at,
                       SplitRng& rng) {
    const double lambda = spec.lambda_K();
    // Streaming log-sum-exp anchored at the running minimum.
    Vec vmin(at.size(), std::numeric_limits<double>::infinity());
    Vec sum(at.size(), 0.0);
    for (std::size_t k = 0; k < spec.K; ++k) {
        const Vec c = spec.model.sample_C(rng);
        for (std::size_t j = 0; j < at.size(); ++j) {
            const double v = dot(at[j].coords(), c);
            if (v < vmin[j]) {
                sum[j] = sum[j] * std::exp(-lambda * (vmin[j] - v)) + 1.0;
                vmin[j] = v;
            } else {
                sum[j] += std::exp(-lambda * (v - vmin[j]));
            }
        }
    }
    const double log_k = std::log(static_cast<double>(spec.K));
    Vec out(at.size());
    for (std::size_t j = 0; j < at.size(); ++j) {
        const double soft = vmin[j] + (log_k - std::log(sum[j])) / lambda;
        out[j] = spec.scale() * soft + spec.offset();
    }
    return out;
}

Vec softmin_values_at(const CoefficientModel& model, std::size_t K, double lambda,
                      const std::vector<SimplexPoint>& at, SplitRng& rng) {
    if (K < 1) throw DomainError("softmin_values_at: K must be >= 1");
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw DomainError("softmin_values_at: lambda must be finite positive");
    Vec vmin(at.size(), std::numeric_limits<double>::infinity());
    Vec sum(at.size(), 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const Vec c = model.sample_C(rng);
        for (std::size_t j = 0; j < at.size(); ++j) {
            const double v = dot(at[j].coords(), c);
            if (v < vmin[j]) {
                sum[j] = sum[j] * std::exp(-lambda * (vmin[j] - v)) + 1.0;
                vmin[j] = v;
            } else {
                sum[j] += std::exp(-lambda * (v - vmin[j]));
            }
        }
    }
    const double log_k = std::log(static_cast<double>(K));
    Vec out(at.size());
    for (std::size_t j = 0; j < at.size(); ++j)
        out[j] = vmin[j] + (log_k - std::log(sum[j])) / lambda;
    return out;
}

namespace {

// Mass of the product intensity over [0, M]^n.
double box_mass(const CoefficientModel& model, double m) {
    const Vec& ae = model.alpha_exponents();
    double log_mass = std::log(model.gamma_coeff());
    for (double a : ae) log_mass += (1.0 + a) * std::log(m) - std::log1p(a);
    return std::exp(log_mass);
}

// Upper bound for sup over the slice of the current envelope: the cheaper of
// the global concave bound n * f(center) and, plane by plane, the maximum of
// <p, x> over the slice (attained at a slice vertex).
double envelope_slice_sup_bound(const std::vector<Vec>& points, std::size_t n, std::size_t k) {
    if (points.empty()) return std::numeric_limits<double>::infinity();
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    double center_val = std::numeric_limits<double>::infinity();
    double plane_bound = std::numeric_limits<double>::infinity();
    for (const Vec& x : points) {
        double s = 0.0, mx = 0.0;
        for (double xi : x) {
            s += xi;
            mx = std::max(mx, xi);
        }
        center_val = std::min(center_val, s / nd);
        plane_bound = std::min(plane_bound, s / kd + (1.0 - nd / kd) * mx);
    }
    return std::min(nd * center_val, plane_bound);
}

void sample_points_in_box(const CoefficientModel& model, double mass, double m_lo, double m_hi,
                          SplitRng& rng, std::vector<Vec>& out) {
    // Draw Poisson(mass) points from h restricted to [0, m_hi]^n, rejecting
    // the inner box [0, m_lo]^n (m_lo = 0 for the initial fill).
    const Vec& ae = model.alpha_exponents();
    const std::size_t n = ae.size();
    const std::uint64_t count = rng.poisson(mass);
    for (std::uint64_t c = 0; c < count; ++c) {
        Vec x(n);
        for (;;) {
            bool inside_inner = true;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = m_hi * std::pow(rng.next_double_pos(), 1.0 / (1.0 + ae[i]));
                if (x[i] > m_lo) inside_inner = false;
            }
            if (!inside_inner) break;
        }
        out.push_back(x);
    }
}

} // namespace

PoissonEnvelope sample_poisson_envelope(const CoefficientModel& model, const CompactSlice& slice,
                                        SplitRng& rng, const PoissonOptions& opts) {
    if (model.dim() != slice.n) throw DomainError("sample_poisson_envelope: dimension mismatch");
    PoissonEnvelope env;
    env.n = model.dim();
    env.slice_k = slice.k;

    double m = opts.initial_box;
    sample_points_in_box(model, box_mass(model, m), 0.0, m, rng, env.points);
    for (;;) {
        const double sup_bound = envelope_slice_sup_bound(env.points, env.n, slice.k);
        if (m / static_cast<double>(slice.k) >= sup_bound) break;
        const double m2 = 2.0 * m;
        if (m2 > opts.max_box)
            throw TruncationFailure(
                "sample_poisson_envelope: box grew past max_box = " +
                std::to_string(opts.max_box) + " with " + std::to_string(env.points.size()) +
                " points; envelope sup bound " + std::to_string(sup_bound));
        sample_points_in_box(model, box_mass(model, m2) - box_mass(model, m), m, m2, rng,
                             env.points);
        m = m2;
    }
    env.box = m;
    return env;
}

PoissonEnvelope sample_poisson_envelope_at(const CoefficientModel& model,
                                           const std::vector<SimplexPoint>& at, SplitRng& rng,
                                           const PoissonOptions& opts) {
    if (at.empty()) throw DomainError("sample_poisson_envelope_at: no evaluation points");
    PoissonEnvelope env;
    env.n = model.dim();
    env.slice_k = 0; // certified pointwise, not on a slice

    double m = opts.initial_box;
    sample_points_in_box(model, box_mass(model, m), 0.0, m, rng, env.points);
    for (;;) {
        bool certified = true;
        for (const SimplexPoint& p : at) {
            double val = std::numeric_limits<double>::infinity();
            for (const Vec& x : env.points) val = std::min(val, dot(p.coords(), x));
            if (m * p.min_coord() < val) {
                certified = false;
                break;
            }
        }
        if (certified) break;
        const double m2 = 2.0 * m;
        if (m2 > opts.max_box)
            throw TruncationFailure("sample_poisson_envelope_at: box grew past max_box = " +
                                    std::to_string(opts.max_box) + " with " +
                                    std::to_string(env.points.size()) + " points");
        sample_points_in_box(model, box_mass(model, m2) - box_mass(model, m), m, m2, rng,
                             env.points);
        m = m2;
    }
    env.box = m;
    return env;
}

ConcaveFn PoissonEnvelope::envelope() const {
    PolyhedralMin rep;
    rep.planes.reserve(points.size());
    for (const Vec& x : points) rep.planes.emplace_back(x);
    return ConcaveFn(std::move(rep));
}

std::size_t PoissonEnvelope::argmin_at(const SimplexPoint& p) const {
    if (points.empty()) throw EmptyEnsembleError("PoissonEnvelope: no points in the box");
    std::size_t best = 0;
    double vmin = dot(p.coords(), points[0]);
    for (std::size_t k = 1; k < points.size(); ++k) {
        const double v = dot(p.coords(), points[k]);
        if (v < vmin) {
            vmin = v;
            best = k;
        }
    }
    return best;
}

ConcaveFn sample_diagonal(const DiagonalSpec& spec, SplitRng& rng) {
    SoftminEnsemble rep;
    rep.lambda = spec.lambda_K();
    rep.scale = spec.scale();
    rep.offset = spec.offset();
    rep.planes.reserve(spec.K);
    for (std::size_t k = 0; k < spec.K; ++k) rep.planes.emplace_back(spec.model.sample_C(rng));
    return ConcaveFn(std::move(rep));
}

PsiTildeValue eval_psi_tilde(const PoissonEnvelope& envelope, const CoefficientModel& model,
                             double c, const SimplexPoint& p) {
    if (!(c > 0.0)) throw DomainError("eval_psi_tilde: c must be > 0");
    if (envelope.points.empty()) throw EmptyEnsembleError("eval_psi_tilde: empty point set");
    double vmin = std::numeric_limits<double>::infinity();
    for (const Vec& x : envelope.points) vmin = std::min(vmin, dot(p.coords(), x));
    double sum = 0.0;
    for (const Vec& x : envelope.points) sum += std::exp(-c * (dot(p.coords(), x) - vmin));
    PsiTildeValue out;
    out.value = vmin - std::log(sum) / c;

    // E sum over the complement of the box: product closed form minus the
    // box part, via regularized incomplete gamma factors.
    const Vec& ae = model.alpha_exponents();
    double log_full = std::log(model.gamma_coeff());
    double frac_inside = 1.0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        log_full += std::lgamma(1.0 + ae[i]) - (1.0 + ae[i]) * std::log(c * p[i]);
        frac_inside *= reg_lower_gamma(1.0 + ae[i], c * p[i] * envelope.box);
    }
    out.tail_mean_bound = std::exp(log_full) * (1.0 - frac_inside);
    return out;
}

} // namespace concave_field
