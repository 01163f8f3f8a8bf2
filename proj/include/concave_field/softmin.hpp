#ifndef CONCAVE_FIELD_SOFTMIN_HPP
#define CONCAVE_FIELD_SOFTMIN_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "concave_field/errors.hpp"

namespace concave_field {

inline constexpr double kHardmin = std::numeric_limits<double>::infinity();

inline bool is_hardmin(double lambda) { return std::isinf(lambda); }

// m_lambda(x_1..x_K) = -(1/lambda) log((1/K) sum_k exp(-lambda x_k)),
// with lambda = inf meaning the exact minimum. Stabilized by shifting
// by the minimum before exponentiating, so lambda * range may exceed
// the overflow threshold without harm.
inline double softmin(std::span<const double> values, double lambda) {
    if (values.empty()) throw EmptyEnsembleError("softmin: empty input");
    if (!(lambda > 0.0)) throw DomainError("softmin: lambda must be in (0, inf]");
    const double m = *std::min_element(values.begin(), values.end());
    if (is_hardmin(lambda)) return m;
    double sum = 0.0;
    for (double v : values) sum += std::exp(-lambda * (v - m));
    const double k = static_cast<double>(values.size());
    return m + (std::log(k) - std::log(sum)) / lambda;
}

inline double softmin(std::initializer_list<double> values, double lambda) {
    return softmin(std::span<const double>(values.begin(), values.size()), lambda);
}

struct SoftminBounds {
    bool lower_ok = false; // min <= softmin
    bool upper_ok = false; // softmin <= min + log(K)/lambda
};

inline SoftminBounds softmin_bounds_check(std::span<const double> values, double lambda,
                                          double tol = 1e-12) {
    if (!(lambda > 0.0) || is_hardmin(lambda))
        throw DomainError("softmin_bounds_check: lambda must be finite positive");
    const double m = *std::min_element(values.begin(), values.end());
    const double s = softmin(values, lambda);
    const double k = static_cast<double>(values.size());
    return SoftminBounds{s >= m - tol, s <= m + std::log(k) / lambda + tol};
}

// Translation equivariance: m_lambda(x + c) == m_lambda(x) + c.
inline bool softmin_shift_check(std::span<const double> values, double lambda, double c,
                                double tol = 1e-12) {
    std::vector<double> shifted(values.begin(), values.end());
    for (double& v : shifted) v += c;
    return std::abs(softmin(shifted, lambda) - (softmin(values, lambda) + c)) <= tol;
}

} // namespace concave_field

#endif
