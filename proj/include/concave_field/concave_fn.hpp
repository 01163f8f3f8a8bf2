#ifndef CONCAVE_FIELD_CONCAVE_FN_HPP
#define CONCAVE_FIELD_CONCAVE_FN_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "concave_field/simplex.hpp"

namespace concave_field {

class SplitRng;

// Positive affine function on the simplex, identified with its vertex
// values: ell(p) = <p, x> with x_i = ell(e_i) > 0.
struct Hyperplane {
    Vec x;

    explicit Hyperplane(Vec coeffs);
    double eval(const SimplexPoint& p) const { return dot(p.coords(), x); }
    std::size_t dim() const { return x.size(); }
};

// f(p) = min_k <p, x_k>.
struct PolyhedralMin {
    std::vector<Hyperplane> planes;
};

// f(p) = scale * m_lambda{<p, x_k>} + offset. The offset is kept separate
// so normalized diagonal samples remain algebraically transparent; it is
// zero for plain softmin ensembles.
struct SoftminEnsemble {
    std::vector<Hyperplane> planes;
    double lambda = 1.0;
    double scale = 1.0;
    double offset = 0.0;
};

// Closed-form function. The evaluator must accept any strictly positive
// vector near the simplex (not only exact unit-sum points) so central
// finite differences are well defined when no gradient is supplied.
struct Analytic {
    std::function<double(const Vec&)> eval;
    std::function<Vec(const Vec&)> grad;                          // optional
    std::function<std::vector<Vec>(const Vec&)> hess;             // optional
    bool nonneg = true;   // false for signed limits that may go below 0
    std::string label;
};

class ConcaveFn {
  public:
    using Rep = std::variant<PolyhedralMin, SoftminEnsemble, Analytic>;

    ConcaveFn(PolyhedralMin rep);   // NOLINT(google-explicit-constructor)
    ConcaveFn(SoftminEnsemble rep); // NOLINT(google-explicit-constructor)
    ConcaveFn(Analytic rep);        // NOLINT(google-explicit-constructor)

    const Rep& rep() const { return *rep_; }
    bool is_polyhedral() const;
    bool is_nonneg() const;
    std::size_t dim_hint() const; // 0 when the representation carries no dimension

    const PolyhedralMin* as_polyhedral() const;
    const SoftminEnsemble* as_softmin() const;
    const Analytic* as_analytic() const;

  private:
    std::shared_ptr<const Rep> rep_; // immutable, cheap to copy across threads
};

double eval(const ConcaveFn& f, const SimplexPoint& p);
// Evaluation off the exact simplex (used by finite differences and duality
// searches); coordinates must be strictly positive.
double eval_raw(const ConcaveFn& f, const Vec& p);

struct GradientResult {
    Vec grad;
    bool tie = false; // polyhedral argmin tie within 1e-12; lowest index chosen
};

// A supergradient of f at an interior p. Polyhedral: coefficients of the
// argmin plane. Softmin ensembles: exact softmin-weighted combination of
// plane coefficients. Analytic: supplied gradient, else central finite
// differences with step 1e-6.
GradientResult gradient(const ConcaveFn& f, const SimplexPoint& p);

// Truncated metric of local uniform convergence:
//   sum_{k=n}^{k_max} 2^{-k} (sup over a lattice of Delta_{n,k} |f-g| ^ 1).
// Approximates the full metric from below with truncation error <= 2^{-k_max}
// plus the lattice discretization gap.
double metric_d(const ConcaveFn& f, const ConcaveFn& g, std::size_t n, std::size_t k_max,
                std::size_t grid);

struct ConcaveBoundReport {
    double max_violation_anchor = 0.0; // f(p) - M_q f(q)
    double max_violation_center = 0.0; // f(p) - n f(barycenter)
    std::size_t samples = 0;
    double anchor_constant = 0.0;      // the M_q used
};

// Checks f(p) <= M_q f(q) and f(p) <= n f(barycenter) at random interior
// points, where M_q = diam(simplex) / dist(q, boundary). Requires a
// non-negative representation.
ConcaveBoundReport check_concave_bounds(const ConcaveFn& f, const SimplexPoint& q,
                                        std::size_t samples, SplitRng& rng);

// diam(closure of simplex) / dist(q, boundary) within the affine hull.
double concave_bound_constant(const SimplexPoint& q);

// --- ready-made analytic generators ---

// Weighted geometric mean prod_i p_i^{w_i} with w on the simplex.
ConcaveFn geometric_mean_fn(Vec weights);
ConcaveFn constant_fn(std::size_t n, double c);

} // namespace concave_field

#endif
