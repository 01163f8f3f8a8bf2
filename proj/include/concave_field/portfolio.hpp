#ifndef CONCAVE_FIELD_PORTFOLIO_HPP
#define CONCAVE_FIELD_PORTFOLIO_HPP

#include <cstddef>
#include <vector>

#include "concave_field/coefficient_model.hpp"
#include "concave_field/concave_fn.hpp"
#include "concave_field/samplers.hpp"
#include "concave_field/simplex.hpp"

namespace concave_field {

class SplitRng;

struct PortfolioWeight {
    Vec weights;  // sums to 1; may touch 0 at ties
    bool tie = false;

    double sum() const;
};

// Weights generated by a positive concave function at p:
//   pi_i = p_i (1 + <grad log Phi(p), e_i - p>).
// The log-gradient is grad(Phi)/Phi(p); requires Phi(p) > 0. Ties in a
// polyhedral argmin fall to the lowest index and are flagged.
PortfolioWeight fgp_map(const ConcaveFn& phi, const SimplexPoint& p);

// Weights generated by the softmin of the given functions, assembled from
// the component portfolios:
//   pi = (1 - sum a_k) p + sum a_k pi^(k),
//   a_k = Phi_k e^{-lambda Phi_k} / (K Phi e^{-lambda Phi}).
// Must coincide with fgp_map applied to the softmin directly.
PortfolioWeight softmin_portfolio_combination(const std::vector<ConcaveFn>& components,
                                              double lambda, const SimplexPoint& p);

// One draw of the limiting portfolio weight at p: the argmin plane Z of a
// point-process envelope certified at p, mapped to p_i Z_i / <p, Z>.
PortfolioWeight portfolio_weight_sample(const CoefficientModel& model, const SimplexPoint& p,
                                        SplitRng& rng, const PoissonOptions& opts = {});

// Unnormalized density of the limiting weight at p: h(y_1/p_1, ..., y_n/p_n).
double portfolio_weight_density(const CoefficientModel& model, const SimplexPoint& p,
                                const PortfolioWeight& y);

// Normalizing constant over the chart D_{n-1} (Lebesgue), by quadrature.
double portfolio_weight_density_norm(const CoefficientModel& model, const SimplexPoint& p,
                                     std::size_t order = 48);

// q = p (*) pi(p^{-1}): the transport map built from the portfolio of Phi at
// the inverted point, then renormalized multiplicatively.
SimplexPoint dirichlet_transport(const ConcaveFn& phi, const SimplexPoint& p);

} // namespace concave_field

#endif
