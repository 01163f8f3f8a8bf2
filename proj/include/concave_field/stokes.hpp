#ifndef CONCAVE_FIELD_STOKES_HPP
#define CONCAVE_FIELD_STOKES_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "concave_field/concave_fn.hpp"
#include "concave_field/simplex.hpp"

namespace concave_field {

// Twice continuously differentiable non-negative concave function given in
// the coordinate chart q = (p_1, ..., p_{n-1}) on
// D_{n-1} = {q > 0 : sum q_i < 1}. The Hessian is with respect to q.
// Closed-form derivatives are preferred; missing ones fall back to central
// differences (step 1e-6 for the gradient, 1e-5 symmetrized for the Hessian).
struct C2Generator {
    std::size_t n = 2; // simplex dimension (chart has n-1 coordinates)
    std::function<double(const Vec&)> eval;
    std::function<Vec(const Vec&)> grad;
    std::function<std::vector<Vec>(const Vec&)> hess;
    bool boundary_zero = false; // asserts psi -> 0 on the simplex boundary
    std::string label;

    Vec gradient_at(const Vec& q) const;
    std::vector<Vec> hessian_at(const Vec& q) const;
};

struct StokesResult {
    double volume = 0.0;
    bool diverged = false;
    Vec partial; // integrals on the shrinking domains, for diagnostics
};

// vol of the region union of psi as (1/n) integral over D_{n-1} of
// psi(q) det(-Hess psi(q)) dq, on interior-shrinking domains with
// epsilon in {1e-2, 1e-3, 1e-4} and Aitken stabilization. Divergence is
// declared when successive partial integrals grow by more than 10%
// without settling. Throws NotConcaveError if -Hess has an eigenvalue
// below -1e-8 at a quadrature point.
StokesResult stokes_volume(const C2Generator& g, std::size_t quadrature_order);

// One-dimensional specialization (n = 2): (1/2) integral of psi'(q)^2 dq,
// valid when psi psi' vanishes at both endpoints; checked numerically at
// q = 1e-6 and 1 - 1e-6 and PreconditionFailed on violation.
double stokes_volume_1d(const std::function<double(double)>& dpsi,
                        const std::function<double(double)>& psi, std::size_t quadrature_order);

// View a chart generator as a function on the simplex (drops the last
// coordinate), e.g. to feed the Monte Carlo region-volume route.
ConcaveFn c2_as_concave_fn(const C2Generator& g);

// Catalog of closed-form generators used by tests and the CLI.
C2Generator c2_parabola();                 // n=2: q(1-q)
C2Generator c2_geometric_mean(double a);   // n=2: a sqrt(q(1-q))
C2Generator c2_sine();                     // n=2: sin(pi q)/pi
// (prod_i p_i)^a; concave on the tangent space for a <= 1/(n-1).
C2Generator c2_power_product(std::size_t n, double a);
// Inverse of the coordinate reciprocal sum (harmonic-mean shape); vanishes
// at unit rate at the boundary, so its dual region fits a compact box.
C2Generator c2_inverse_sum(std::size_t n);
C2Generator c2_scaled(const C2Generator& g, double t);

} // namespace concave_field

#endif
