#include "concave_field/portfolio.hpp"

#include <algorithm>
#include <cmath>

#include "concave_field/errors.hpp"
#include "concave_field/quadrature.hpp"
#include "concave_field/rng.hpp"
#include "concave_field/softmin.hpp"

namespace concave_field {

double PortfolioWeight::sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

PortfolioWeight fgp_map(const ConcaveFn& phi, const SimplexPoint& p) {
    const double value = eval(phi, p);
    if (!(value > 0.0)) throw DomainError("fgp_map: generating function must be positive at p");
    const GradientResult g = gradient(phi, p);
    const std::size_t n = p.dim();
    const double pg = dot(p.coords(), g.grad);
    PortfolioWeight out;
    out.tie = g.tie;
    out.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.weights[i] = p[i] * (1.0 + (g.grad[i] - pg) / value);
    return out;
}

PortfolioWeight softmin_portfolio_combination(const std::vector<ConcaveFn>& components,
                                              double lambda, const SimplexPoint& p) {
    if (components.empty()) throw EmptyEnsembleError("softmin_portfolio_combination: no components");
    if (!(lambda > 0.0) || is_hardmin(lambda))
        throw DomainError("softmin_portfolio_combination: lambda must be finite positive");
    const std::size_t k_count = components.size();
    std::vector<double> values(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        values[k] = eval(components[k], p);
        if (!(values[k] > 0.0))
            throw DomainError("softmin_portfolio_combination: all components must be positive at p");
    }
    const double phi = softmin(values, lambda);

    // a_k = Phi_k e^{-lambda Phi_k} / (K Phi e^{-lambda Phi}); the exponent is
    // taken relative to the softmin value, which keeps it bounded by K.
    const std::size_t n = p.dim();
    PortfolioWeight out;
    out.weights.assign(n, 0.0);
    double coeff_sum = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
        const double a_k = values[k] * std::exp(-lambda * (values[k] - phi)) /
                           (static_cast<double>(k_count) * phi);
        coeff_sum += a_k;
        const PortfolioWeight pk = fgp_map(components[k], p);
        out.tie = out.tie || pk.tie;
        for (std::size_t i = 0; i < n; ++i) out.weights[i] += a_k * pk.weights[i];
    }
    for (std::size_t i = 0; i < n; ++i) out.weights[i] += (1.0 - coeff_sum) * p[i];
    return out;
}

PortfolioWeight portfolio_weight_sample(const CoefficientModel& model, const SimplexPoint& p,
                                        SplitRng& rng, const PoissonOptions& opts) {
    // The pointwise certificate guarantees the argmin at p is the true one.
    const PoissonEnvelope env = sample_poisson_envelope_at(model, {p}, rng, opts);
    const Vec& z = env.points[env.argmin_at(p)];
    double denom = 0.0;
    Vec numer(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        numer[i] = p[i] * z[i];
        denom += numer[i];
    }
    PortfolioWeight out;
    out.weights.resize(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) out.weights[i] = numer[i] / denom;
    return out;
}

double portfolio_weight_density(const CoefficientModel& model, const SimplexPoint& p,
                                const PortfolioWeight& y) {
    Vec scaled(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (!(y.weights[i] > 0.0))
            throw DomainError("portfolio_weight_density: weight must be interior");
        scaled[i] = y.weights[i] / p[i];
    }
    return model.h(scaled);
}

double portfolio_weight_density_norm(const CoefficientModel& model, const SimplexPoint& p,
                                     std::size_t order) {
    // integral over D_{n-1} of h(y_1/p_1, ..., y_n/p_n) dy with
    // y_n = 1 - sum y_i: pull the powers of y into the quadrature weight,
    // the trailing coordinate into the tail power.
    const Vec& ae = model.alpha_exponents();
    const std::size_t n = model.dim();
    Vec powers(ae.begin(), ae.end() - 1);
    double coeff = model.gamma_coeff();
    for (std::size_t i = 0; i < n; ++i) coeff /= std::pow(p[i], ae[i]);
    const double integral = integrate_simplex_weighted([](const Vec&) { return 1.0; }, 1.0,
                                                       powers, order, ae[n - 1]);
    return coeff * integral;
}

SimplexPoint dirichlet_transport(const ConcaveFn& phi, const SimplexPoint& p) {
    const std::size_t n = p.dim();
    Vec inv(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        inv[i] = 1.0 / p[i];
        s += inv[i];
    }
    for (double& v : inv) v /= s;
    const PortfolioWeight pi = fgp_map(phi, SimplexPoint::interior_renormalized(inv));
    Vec q(n);
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = p[i] * pi.weights[i];
        denom += q[i];
    }
    if (!(denom > 0.0)) throw DomainError("dirichlet_transport: degenerate weight product");
    for (double& v : q) v /= denom;
    return SimplexPoint::interior_renormalized(q);
}

} // namespace concave_field
