#include "concave_field/quadrature.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <mutex>

#include "concave_field/errors.hpp"

namespace concave_field {

namespace {

GaussRule build_rule(std::size_t order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const std::size_t m = (order + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n(x).
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(order) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

// Symmetric tridiagonal QL with implicit shifts, rotating a companion vector
// z so that z_i ends up as the first component of the i-th eigenvector.
// diag couples d[i]; offd[i] couples i and i+1 (offd has size n-1).
void tridiag_eigen_first_row(std::vector<double>& d, std::vector<double>& offd,
                             std::vector<double>& z) {
    const std::size_t n = d.size();
    std::vector<double> e(offd);
    e.push_back(0.0);
    z.assign(n, 0.0);
    z[0] = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            if (iter > 60) throw NumericalFailure("tridiag_eigen: no convergence");
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
            }
            if (m == l) break;
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            std::size_t i = m;
            while (i-- > l) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
                if (i == l) {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                    break;
                }
            }
        }
    }
}

GaussRule build_jacobi01(double a, double b, std::size_t order) {
    // Recurrence coefficients for the weight (1-x)^a (1+x)^b on [-1, 1]
    // (Gautschi, r_jacobi), then Golub-Welsch and the affine map to [0, 1].
    const std::size_t n = order;
    std::vector<double> diag(n, 0.0), offd(n > 1 ? n - 1 : 0, 0.0);
    const double apb = a + b;
    diag[0] = apb == 0.0 && a == b ? 0.0 : (b - a) / (apb + 2.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double den = (2.0 * kk + apb) * (2.0 * kk + apb + 2.0);
        diag[k] = (b * b - a * a) == 0.0 ? 0.0 : (b * b - a * a) / den;
    }
    if (n > 1) {
        offd[0] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) /
                            ((2.0 + apb) * (2.0 + apb) * (3.0 + apb)));
        for (std::size_t k = 2; k < n; ++k) {
            const double kk = static_cast<double>(k);
            const double q = 2.0 * kk + apb;
            offd[k - 1] = std::sqrt(4.0 * kk * (kk + a) * (kk + b) * (kk + apb) /
                                    (q * q * (q + 1.0) * (q - 1.0)));
        }
    }
    const double log_mu0 = (apb + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                           std::lgamma(b + 1.0) - std::lgamma(apb + 2.0);
    std::vector<double> z;
    tridiag_eigen_first_row(diag, offd, z);

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });
    // Map x in [-1,1] to t = (1+x)/2; the [0,1]-weight t^b (1-t)^a picks up
    // the factor 2^{-(a+b+1)} relative to mu0.
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + diag[idx[i]]);
        rule.weights[i] = std::exp(log_mu0 - (apb + 1.0) * std::log(2.0)) * z[idx[i]] * z[idx[i]];
    }
    return rule;
}

} // namespace

const GaussRule& gauss_jacobi01(double a, double b, std::size_t order) {
    if (order == 0) throw DomainError("gauss_jacobi01: order must be >= 1");
    if (a <= -1.0 || b <= -1.0) throw DomainError("gauss_jacobi01: powers must be > -1");
    static std::map<std::tuple<double, double, std::size_t>, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(a, b, order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_jacobi01(a, b, order)).first;
    return it->second;
}

const GaussRule& gauss_legendre(std::size_t order) {
    if (order == 0) throw DomainError("gauss_legendre: order must be >= 1");
    static std::map<std::size_t, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    std::size_t order) {
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < order; ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double integrate_1d_composite(const std::function<double(double)>& f, double lo, double hi,
                              std::size_t order, std::size_t panels) {
    if (panels == 0) throw DomainError("integrate_1d_composite: panels must be >= 1");
    const double w = (hi - lo) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t j = 0; j < panels; ++j)
        sum += integrate_1d(f, lo + w * static_cast<double>(j), lo + w * static_cast<double>(j + 1),
                            order);
    return sum;
}

namespace {

// Conical product: x_d = R_d t_d with R_{d+1} = R_d (1 - t_d); level d uses
// the Jacobi weight t^{pow_d} (1-t)^{A_d}, A_d = sum_{j>d}(1+pow_j) + tail.
double conical_rec(const std::function<double(const Vec&)>& f,
                   const std::vector<const GaussRule*>& rules, Vec& x, std::size_t d,
                   double remaining) {
    const GaussRule& rule = *rules[d];
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        x[d] = remaining * t;
        double inner;
        if (d + 1 == x.size()) {
            inner = f(x);
        } else {
            inner = conical_rec(f, rules, x, d + 1, remaining * (1.0 - t));
        }
        sum += rule.weights[i] * inner;
    }
    return sum;
}

double coord_domain_rec(const std::function<double(const Vec&)>& f, Vec& q, std::size_t d,
                        double remaining, double eps, std::size_t order) {
    // q_d ranges over [eps, remaining - eps * (dims left after this one)].
    const double dims_after = static_cast<double>(q.size() - d - 1);
    const double hi = remaining - eps * dims_after;
    if (hi <= eps) return 0.0;
    const GaussRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (eps + hi);
    const double half = 0.5 * (hi - eps);
    double sum = 0.0;
    for (std::size_t i = 0; i < order; ++i) {
        q[d] = mid + half * rule.nodes[i];
        double inner;
        if (d + 1 == q.size()) {
            inner = f(q);
        } else {
            inner = coord_domain_rec(f, q, d + 1, remaining - q[d], eps, order);
        }
        sum += rule.weights[i] * inner;
    }
    return half * sum;
}

} // namespace

double integrate_simplex_weighted(const std::function<double(const Vec&)>& f, double budget,
                                  const Vec& powers, std::size_t order, double tail_power) {
    if (powers.empty()) throw DomainError("integrate_simplex_weighted: empty powers");
    for (double p : powers)
        if (p <= -1.0) throw DomainError("integrate_simplex_weighted: powers must be > -1");
    if (tail_power <= -1.0) throw DomainError("integrate_simplex_weighted: tail power must be > -1");
    if (budget <= 0.0) return 0.0;
    const std::size_t n = powers.size();
    std::vector<const GaussRule*> rules(n);
    double total_power = tail_power;
    for (std::size_t d = n; d-- > 0;) {
        rules[d] = &gauss_jacobi01(total_power, powers[d], order);
        total_power += 1.0 + powers[d];
    }
    Vec x(n, 0.0);
    const double scale = std::pow(budget, total_power); // budget^{n + sum pow + tail}
    return scale * conical_rec(f, rules, x, 0, budget);
}

double integrate_coord_domain(const std::function<double(const Vec&)>& f, std::size_t dim,
                              double eps, std::size_t order) {
    if (dim == 0) throw DomainError("integrate_coord_domain: dim must be >= 1");
    Vec q(dim, 0.0);
    return coord_domain_rec(f, q, 0, 1.0 - eps, eps, order);
}

} // namespace concave_field
