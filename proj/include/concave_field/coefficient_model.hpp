#ifndef CONCAVE_FIELD_COEFFICIENT_MODEL_HPP
#define CONCAVE_FIELD_COEFFICIENT_MODEL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "concave_field/simplex.hpp"

namespace concave_field {

class SplitRng;

// Law of the coefficient vector C driving the random hyperplanes, together
// with its small-scale limit: a density rho with rho(kappa x)/kappa^alpha ->
// h(x) near the origin, where h(x) = gamma_coeff * prod x_i^{alpha_i} for
// every model supported here. ConstantIntensity carries only h (no law of C)
// and exists for the point-process construction.
class CoefficientModel {
  public:
    enum class Kind { IidUniform, IidExponential, IndependentGamma, ConstantIntensity };

    static CoefficientModel iid_uniform(std::size_t n, double scale);
    static CoefficientModel iid_exponential(std::size_t n, double rate);
    // Gamma with density beta^{shape} x^{shape-1} e^{-beta x} / Gamma(shape).
    static CoefficientModel independent_gamma(Vec shapes, Vec betas);
    static CoefficientModel constant_intensity(std::size_t n, double gamma);

    // Grammar: exponential:rate=1.0 | gamma:shapes=[1.5,2.0],scales=[1,1]
    //          | uniform:scale=1.0 | constant-h:gamma=1.0
    // n fixes the dimension for the iid/constant kinds and must match the
    // shapes length for gamma.
    static CoefficientModel parse(const std::string& spec, std::size_t n);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return n_; }
    std::string spec_string() const;

    bool sampleable() const { return kind_ != Kind::ConstantIntensity; }
    bool has_cgf() const { return kind_ != Kind::ConstantIntensity; }

    // Homogeneity order of h: sum of the per-coordinate exponents.
    double alpha() const;
    const Vec& alpha_exponents() const { return alpha_exp_; }
    double gamma_coeff() const { return gamma_coeff_; }
    double h(const Vec& x) const;
    // Joint density of C at x (zero outside the support).
    double density(const Vec& x) const;

    Vec sample_C(SplitRng& rng) const;

    // log E exp(<t, C>) for t <= 0 componentwise.
    double cgf(const Vec& t) const;

    // integral of h over R(p, a) = {x > 0 : <p, x> < a}. Closed form for
    // the constant kind; for the others a^{n+alpha} * M / prod p_i^{1+alpha_i}
    // with M evaluated once by deterministic quadrature and cached.
    double intensity_integral_R(const SimplexPoint& p, double a) const;

    // M = integral of h over R(barycenter, 1/n); quadrature result, cached.
    double slice_constant_M() const;

    // Monte Carlo route for the same integral: rejection in the bounding box
    // [0, a/p_i] per axis with antithetic pairs. Returns (estimate, stderr).
    std::pair<double, double> intensity_integral_mc(const SimplexPoint& p, double a,
                                                    std::size_t points, SplitRng& rng) const;

  private:
    CoefficientModel() = default;

    Kind kind_ = Kind::IidUniform;
    std::size_t n_ = 0;
    double scale_ = 1.0;      // uniform
    double rate_ = 1.0;       // exponential
    Vec shapes_;              // gamma
    Vec betas_;               // gamma
    Vec alpha_exp_;           // per-coordinate exponent of h
    double gamma_coeff_ = 1.0;
    mutable double cached_M_ = -1.0;
};

} // namespace concave_field

#endif
