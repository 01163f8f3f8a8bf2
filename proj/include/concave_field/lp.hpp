#ifndef CONCAVE_FIELD_LP_HPP
#define CONCAVE_FIELD_LP_HPP

#include <cstddef>
#include <vector>

#include "concave_field/simplex.hpp"

namespace concave_field {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    Vec x;
};

// min <c, x>  subject to  A x >= b,  x >= 0.
// Dense two-phase simplex with Bland's rule; sized for the small systems
// arising from envelope evaluation (a handful of rows and columns).
LpSolution lp_solve_min(const Vec& c, const std::vector<Vec>& A, const Vec& b,
                        std::size_t max_iters = 10000);

} // namespace concave_field

#endif
