#include "concave_field/stokes.hpp"

#include <algorithm>
#include <cmath>

#include "concave_field/errors.hpp"
#include "concave_field/quadrature.hpp"

namespace concave_field {

Vec C2Generator::gradient_at(const Vec& q) const {
    if (grad) return grad(q);
    const double h = 1e-6;
    Vec g(q.size());
    Vec w = q;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double step = std::min(h, 0.5 * q[i]);
        w[i] = q[i] + step;
        const double up = eval(w);
        w[i] = q[i] - step;
        const double dn = eval(w);
        w[i] = q[i];
        g[i] = (up - dn) / (2.0 * step);
    }
    return g;
}

std::vector<Vec> C2Generator::hessian_at(const Vec& q) const {
    if (hess) return hess(q);
    const std::size_t d = q.size();
    const double h = 1e-5;
    std::vector<Vec> m(d, Vec(d, 0.0));
    Vec w = q;
    const double f0 = eval(q);
    for (std::size_t i = 0; i < d; ++i) {
        const double hi = std::min(h, 0.25 * q[i]);
        w[i] = q[i] + hi;
        const double up = eval(w);
        w[i] = q[i] - hi;
        const double dn = eval(w);
        w[i] = q[i];
        m[i][i] = (up - 2.0 * f0 + dn) / (hi * hi);
        for (std::size_t j = i + 1; j < d; ++j) {
            const double hj = std::min(h, 0.25 * q[j]);
            w[i] = q[i] + hi;
            w[j] = q[j] + hj;
            const double pp = eval(w);
            w[j] = q[j] - hj;
            const double pm = eval(w);
            w[i] = q[i] - hi;
            const double mm = eval(w);
            w[j] = q[j] + hj;
            const double mp = eval(w);
            w[i] = q[i];
            w[j] = q[j];
            m[i][j] = m[j][i] = (pp - pm - mp + mm) / (4.0 * hi * hj);
        }
    }
    return m;
}

namespace {

double det_inplace(std::vector<Vec> m) {
    const std::size_t d = m.size();
    double det = 1.0;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < d; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < d; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < d; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

// Cholesky feasibility of A + floor*I: succeeds iff the smallest eigenvalue
// of A is above -floor.
bool psd_with_floor(std::vector<Vec> a, double floor) {
    const std::size_t d = a.size();
    for (std::size_t i = 0; i < d; ++i) a[i][i] += floor;
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t k = 0; k < c; ++k) a[c][c] -= a[c][k] * a[c][k];
        if (a[c][c] <= 0.0) return false;
        a[c][c] = std::sqrt(a[c][c]);
        for (std::size_t r = c + 1; r < d; ++r) {
            for (std::size_t k = 0; k < c; ++k) a[r][c] -= a[r][k] * a[c][k];
            a[r][c] /= a[c][c];
        }
    }
    return true;
}

double stokes_integrand(const C2Generator& g, const Vec& q) {
    const double v = g.eval(q);
    std::vector<Vec> neg_h = g.hessian_at(q);
    for (Vec& row : neg_h)
        for (double& e : row) e = -e;
    if (!psd_with_floor(neg_h, 1e-8))
        throw NotConcaveError("stokes_volume: -Hessian has an eigenvalue below -1e-8");
    return v * det_inplace(std::move(neg_h));
}

} // namespace

StokesResult stokes_volume(const C2Generator& g, std::size_t quadrature_order) {
    if (!g.boundary_zero)
        throw PreconditionFailed("stokes_volume: generator must vanish on the boundary");
    StokesResult out;
    const std::size_t dim = g.n - 1;
    const Vec center(dim, 1.0 / static_cast<double>(g.n));
    if (g.eval(center) <= 0.0) return out; // identically zero by the concave bound

    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double v = integrate_coord_domain([&](const Vec& q) { return stokes_integrand(g, q); },
                                                dim, eps, quadrature_order) /
                         static_cast<double>(g.n);
        out.partial.push_back(v);
    }
    const double v1 = out.partial[0], v2 = out.partial[1], v3 = out.partial[2];
    const double growth = (v3 - v2) / std::max(v2, 1e-300);
    if (growth > 0.10) {
        out.diverged = true;
        return out;
    }
    // Aitken extrapolation of the monotone tail when it is contracting.
    const double d1 = v2 - v1, d2 = v3 - v2;
    double volume = v3;
    if (std::abs(d2 - d1) > 1e-300) {
        const double extrapolated = v3 - d2 * d2 / (d2 - d1);
        if (std::abs(extrapolated - v3) < 0.1 * std::abs(v3)) volume = extrapolated;
    }
    out.volume = volume;
    return out;
}

double stokes_volume_1d(const std::function<double(double)>& dpsi,
                        const std::function<double(double)>& psi, std::size_t quadrature_order) {
    for (double q : {1e-6, 1.0 - 1e-6}) {
        if (std::abs(psi(q) * dpsi(q)) >= 1e-4)
            throw PreconditionFailed("stokes_volume_1d: psi * psi' does not vanish at the endpoints");
    }
    return 0.5 * integrate_1d_composite([&](double q) { return dpsi(q) * dpsi(q); }, 0.0, 1.0,
                                        quadrature_order, 64);
}

ConcaveFn c2_as_concave_fn(const C2Generator& g) {
    Analytic a;
    a.label = g.label.empty() ? "c2-generator" : g.label;
    a.nonneg = true;
    a.eval = [g](const Vec& p) {
        Vec q(p.begin(), p.end() - 1);
        return g.eval(q);
    };
    return ConcaveFn(std::move(a));
}

C2Generator c2_parabola() {
    C2Generator g;
    g.n = 2;
    g.label = "parabola";
    g.boundary_zero = true;
    g.eval = [](const Vec& q) { return q[0] * (1.0 - q[0]); };
    g.grad = [](const Vec& q) { return Vec{1.0 - 2.0 * q[0]}; };
    g.hess = [](const Vec&) { return std::vector<Vec>{{-2.0}}; };
    return g;
}

C2Generator c2_geometric_mean(double a) {
    C2Generator g;
    g.n = 2;
    g.label = "geometric-mean";
    g.boundary_zero = true;
    g.eval = [a](const Vec& q) { return a * std::sqrt(q[0] * (1.0 - q[0])); };
    g.grad = [a](const Vec& q) {
        const double s = q[0] * (1.0 - q[0]);
        return Vec{a * (1.0 - 2.0 * q[0]) / (2.0 * std::sqrt(s))};
    };
    g.hess = [a](const Vec& q) {
        const double s = q[0] * (1.0 - q[0]);
        return std::vector<Vec>{{-a / (4.0 * std::pow(s, 1.5))}};
    };
    return g;
}

C2Generator c2_sine() {
    C2Generator g;
    g.n = 2;
    g.label = "sine";
    g.boundary_zero = true;
    g.eval = [](const Vec& q) { return std::sin(M_PI * q[0]) / M_PI; };
    g.grad = [](const Vec& q) { return Vec{std::cos(M_PI * q[0])}; };
    g.hess = [](const Vec& q) { return std::vector<Vec>{{-M_PI * std::sin(M_PI * q[0])}}; };
    return g;
}

// (prod_i p_i)^a in the chart, i.e. (q_1 ... q_{n-1} (1 - sum q))^a.
// Concave on the simplex for a <= 1/(n-1) restricted to the tangent space;
// a = 1 is the parabola when n = 2, a = 1/2 works for n = 3.
C2Generator c2_power_product(std::size_t n, double a) {
    C2Generator g;
    g.n = n;
    g.label = "power-product";
    g.boundary_zero = true;
    auto log_parts = [](const Vec& q, double& value_log, Vec& l1, double& s) {
        s = 1.0;
        for (double qi : q) s -= qi;
        value_log = std::log(s);
        l1.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            value_log += std::log(q[i]);
            l1[i] = 1.0 / q[i] - 1.0 / s;
        }
    };
    g.eval = [a, log_parts](const Vec& q) {
        double vl, s;
        Vec l1;
        log_parts(q, vl, l1, s);
        return std::exp(a * vl);
    };
    g.grad = [a, log_parts](const Vec& q) {
        double vl, s;
        Vec l1;
        log_parts(q, vl, l1, s);
        const double f = std::exp(a * vl);
        Vec out(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = f * a * l1[i];
        return out;
    };
    g.hess = [a, log_parts](const Vec& q) {
        double vl, s;
        Vec l1;
        log_parts(q, vl, l1, s);
        const double f = std::exp(a * vl);
        const std::size_t d = q.size();
        std::vector<Vec> h(d, Vec(d, 0.0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const double lij = (i == j ? -1.0 / (q[i] * q[i]) : 0.0) - 1.0 / (s * s);
                h[i][j] = f * (a * a * l1[i] * l1[j] + a * lij);
            }
        return h;
    };
    return g;
}

C2Generator c2_inverse_sum(std::size_t n) {
    C2Generator g;
    g.n = n;
    g.label = "inverse-sum";
    g.boundary_zero = true;
    auto parts = [](const Vec& q, double& big_s, Vec& ds, double& slack) {
        slack = 1.0;
        for (double qi : q) slack -= qi;
        big_s = 1.0 / slack;
        ds.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            big_s += 1.0 / q[i];
            ds[i] = -1.0 / (q[i] * q[i]) + 1.0 / (slack * slack);
        }
    };
    g.eval = [parts](const Vec& q) {
        double s, slack;
        Vec ds;
        parts(q, s, ds, slack);
        return 1.0 / s;
    };
    g.grad = [parts](const Vec& q) {
        double s, slack;
        Vec ds;
        parts(q, s, ds, slack);
        Vec out(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = -ds[i] / (s * s);
        return out;
    };
    g.hess = [parts](const Vec& q) {
        double s, slack;
        Vec ds;
        parts(q, s, ds, slack);
        const std::size_t d = q.size();
        std::vector<Vec> h(d, Vec(d, 0.0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const double dds = (i == j ? 2.0 / (q[i] * q[i] * q[i]) : 0.0) +
                                   2.0 / (slack * slack * slack);
                h[i][j] = 2.0 * ds[i] * ds[j] / (s * s * s) - dds / (s * s);
            }
        return h;
    };
    return g;
}

C2Generator c2_scaled(const C2Generator& g, double t) {
    C2Generator out = g;
    out.label = g.label + "-scaled";
    out.eval = [g, t](const Vec& q) { return t * g.eval(q); };
    if (g.grad)
        out.grad = [g, t](const Vec& q) {
            Vec v = g.grad(q);
            for (double& c : v) c *= t;
            return v;
        };
    else
        out.grad = nullptr;
    if (g.hess)
        out.hess = [g, t](const Vec& q) {
            std::vector<Vec> h = g.hess(q);
            for (Vec& row : h)
                for (double& c : row) c *= t;
            return h;
        };
    else
        out.hess = nullptr;
    return out;
}

} // namespace concave_field
