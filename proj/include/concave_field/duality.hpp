#ifndef CONCAVE_FIELD_DUALITY_HPP
#define CONCAVE_FIELD_DUALITY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "concave_field/coefficient_model.hpp"
#include "concave_field/concave_fn.hpp"
#include "concave_field/simplex.hpp"

namespace concave_field {

class SplitRng;

// Anchor data (p^(1),a_1),...,(p^(r),a_r): distinct interior points with
// positive levels. Defines both the union of regions R(p^(i), a_i) and the
// smallest non-negative concave function with psi(p^(i)) >= a_i.
struct RegionSpec {
    std::vector<SimplexPoint> points;
    Vec levels;

    RegionSpec(std::vector<SimplexPoint> pts, Vec lvls);
    std::size_t r() const { return points.size(); }
    std::size_t n() const { return points.front().dim(); }
};

// x lies in the union iff <p^(i), x> < a_i for some i (strict).
bool region_contains(const RegionSpec& spec, const Vec& x);

// The minimal envelope psi_{p,a}. Evaluation at q solves
//   min <q, x>  s.t.  <p^(i), x> >= a_i, x >= 0
// (support-function form over the dual complement set).
ConcaveFn envelope_from_constraints(const RegionSpec& spec);

// min over the closed simplex of <p, x> - psi(p): negative iff x lies in
// the region union of psi. Coarse lattice scan plus convex refinement
// (golden section for n = 2, projected gradient descent otherwise).
double region_membership_gap(const ConcaveFn& psi, const Vec& x, std::size_t coarse_grid = 33,
                             double tol = 1e-9);

struct TailResult {
    double tail = 1.0;       // exp(-integral), 0 when diverged
    double integral = 0.0;   // integral of h over the region union
    double stderr_integral = 0.0;
    double stderr_tail = 0.0;
    bool diverged = false;
    Vec box;                 // importance-sampling box actually used
};

// T(psi) = exp(-integral over the union of regions below psi of h), by
// importance sampling from h restricted to a certified bounding box.
// Divergence screening (critical boundary decay of psi against the
// exponents of h) runs first and short-circuits to tail = 0.
TailResult tail_probability(const CoefficientModel& model, const ConcaveFn& psi,
                            std::size_t mc_points, SplitRng& rng);

// exp(-integral of h over R(p^(1),a_1) u ... u R(p^(r),a_r)).
// r = 1 is closed form; r <= 3 uses inclusion-exclusion with Monte Carlo
// intersections; larger r falls back to plain Monte Carlo over the union box.
// Deterministic for fixed arguments (internally seeded).
double finite_dim_tail(const CoefficientModel& model, const RegionSpec& spec,
                       std::size_t mc_points = 200000, std::uint64_t seed = 0x8d5f21c3);

// True when psi decays no faster than the critical boundary exponent of the
// model on some face, which makes the h-integral over its region infinite.
bool tail_divergence_screen(const CoefficientModel& model, const ConcaveFn& psi);

} // namespace concave_field

#endif
