#ifndef CONCAVE_FIELD_STATS_HPP
#define CONCAVE_FIELD_STATS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "concave_field/simplex.hpp"

namespace concave_field {

struct TestReport {
    std::string name;
    std::string checks;     // the mathematical statement being verified
    double statistic = 0.0;
    double critical = 0.0;  // statistic < critical passes (or tolerance bound)
    std::size_t sample_size = 0;
    bool pass = false;
    std::string detail;
};

// One-sample Kolmogorov-Smirnov against Exp(rate); asymptotic 1% critical
// value 1.63 / sqrt(m). Requires at least 100 strictly positive samples.
TestReport ks_test_exponential(std::vector<double> samples, double rate);

// Two-sample Kolmogorov-Smirnov, asymptotic 1% critical value
// 1.63 * sqrt((m + n) / (m n)). Requires at least 100 samples on each side.
TestReport two_sample_ks(std::vector<double> a, std::vector<double> b);

// Pearson chi-square of samples in [0,1] against a given cdf on equal-mass
// bins; 1% critical from the Wilson-Hilferty quantile.
TestReport chi_square_gof(const std::vector<double>& samples,
                          const std::vector<double>& cdf_at_edges, std::size_t bins);

// Equal-width uniformity special case on [0, 1].
TestReport chi_square_uniform(const std::vector<double>& samples, std::size_t bins);

double exp_cdf(double x, double rate);

} // namespace concave_field

#endif
