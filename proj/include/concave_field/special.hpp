#ifndef CONCAVE_FIELD_SPECIAL_HPP
#define CONCAVE_FIELD_SPECIAL_HPP

#include <cmath>

#include "concave_field/errors.hpp"

namespace concave_field {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
// series for x < a + 1 and Lentz continued fraction otherwise.
inline double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw DomainError("reg_lower_gamma: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double log_prefix = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int k = 0; k < 500; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(log_prefix);
    }
    // Continued fraction for Q(a, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(log_prefix) * h;
}

// Quantile of the chi-square distribution by the Wilson-Hilferty cube
// approximation; adequate for test thresholds at conventional levels.
inline double chi_square_quantile_wh(double dof, double z_quantile) {
    const double t = 2.0 / (9.0 * dof);
    const double c = 1.0 - t + z_quantile * std::sqrt(t);
    return dof * c * c * c;
}

} // namespace concave_field

#endif
