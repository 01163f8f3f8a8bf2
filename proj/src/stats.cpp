#include "concave_field/stats.hpp"

#include <algorithm>
#include <cmath>

#include "concave_field/errors.hpp"
#include "concave_field/special.hpp"

namespace concave_field {

double exp_cdf(double x, double rate) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

TestReport ks_test_exponential(std::vector<double> samples, double rate) {
    if (samples.size() < 100) throw DomainError("ks_test_exponential: need at least 100 samples");
    if (!(rate > 0.0)) throw DomainError("ks_test_exponential: rate must be > 0");
    for (double s : samples)
        if (!(s > 0.0)) throw DomainError("ks_test_exponential: samples must be > 0");
    std::sort(samples.begin(), samples.end());
    const double m = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = exp_cdf(samples[i], rate);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / m - f));
        d = std::max(d, std::abs(static_cast<double>(i) / m - f));
    }
    TestReport r;
    r.name = "ks-exponential";
    r.statistic = d;
    r.critical = 1.63 / std::sqrt(m);
    r.sample_size = samples.size();
    r.pass = d < r.critical;
    return r;
}

TestReport two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.size() < 100 || b.size() < 100)
        throw DomainError("two_sample_ks: need at least 100 samples each");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        // Compare the empirical cdfs just after the next distinct value, so
        // ties advance both sides together.
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    TestReport r;
    r.name = "ks-two-sample";
    r.statistic = d;
    const double m = static_cast<double>(a.size());
    const double n = static_cast<double>(b.size());
    r.critical = 1.63 * std::sqrt((m + n) / (m * n));
    r.sample_size = a.size() + b.size();
    r.pass = d < r.critical;
    return r;
}

TestReport chi_square_gof(const std::vector<double>& samples,
                          const std::vector<double>& cdf_at_edges, std::size_t bins) {
    if (bins < 2 || cdf_at_edges.size() != bins + 1)
        throw DomainError("chi_square_gof: edges must have bins + 1 entries");
    const double m = static_cast<double>(samples.size());
    std::vector<double> observed(bins, 0.0);
    for (double s : samples) {
        const std::size_t b =
            std::min(bins - 1, static_cast<std::size_t>(s * static_cast<double>(bins)));
        observed[b] += 1.0;
    }
    double stat = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        const double expected = m * (cdf_at_edges[b + 1] - cdf_at_edges[b]);
        if (expected <= 0.0) throw DomainError("chi_square_gof: empty expected bin");
        const double diff = observed[b] - expected;
        stat += diff * diff / expected;
    }
    TestReport r;
    r.name = "chi-square";
    r.statistic = stat;
    r.critical = chi_square_quantile_wh(static_cast<double>(bins - 1), 2.3263478740408408);
    r.sample_size = samples.size();
    r.pass = stat < r.critical;
    return r;
}

TestReport chi_square_uniform(const std::vector<double>& samples, std::size_t bins) {
    std::vector<double> edges(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        edges[b] = static_cast<double>(b) / static_cast<double>(bins);
    TestReport r = chi_square_gof(samples, edges, bins);
    r.name = "chi-square-uniform";
    return r;
}

} // namespace concave_field
