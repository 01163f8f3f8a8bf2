#ifndef CONCAVE_FIELD_QUADRATURE_HPP
#define CONCAVE_FIELD_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "concave_field/simplex.hpp"

namespace concave_field {

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre recurrence; cached per order.
const GaussRule& gauss_legendre(std::size_t order);

// Gauss-Jacobi rule on [0, 1] for the weight t^b (1-t)^a, a, b > -1:
//   integral_0^1 f(t) t^b (1-t)^a dt ~= sum_i w_i f(t_i).
// Built by Golub-Welsch from the Jacobi-matrix recurrence; cached.
const GaussRule& gauss_jacobi01(double a, double b, std::size_t order);

double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    std::size_t order);

// Composite rule: `panels` equal subintervals, `order` points each.
double integrate_1d_composite(const std::function<double(double)>& f, double lo, double hi,
                              std::size_t order, std::size_t panels);

// integral over {x in R_+^n : sum x_i < budget} of
//   f(x) prod_i x_i^{pow_i} (budget - sum x_i)^{tail_power} dx
// by a conical product of Gauss-Jacobi rules. The algebraic factors are
// carried entirely by the rule weights, so the result is exact whenever f
// is a low-degree polynomial (in particular f == 1).
double integrate_simplex_weighted(const std::function<double(const Vec&)>& f, double budget,
                                  const Vec& powers, std::size_t order, double tail_power = 0.0);

// integral over the shrunken coordinate domain
//   {q in R_+^{n-1} : q_i >= eps, sum q_i <= 1 - eps}
// of f(q) dq, by nested Gauss-Legendre.
double integrate_coord_domain(const std::function<double(const Vec&)>& f, std::size_t dim,
                              double eps, std::size_t order);

} // namespace concave_field

#endif
