#include "concave_field/lp.hpp"

#include <cmath>
#include <limits>

#include "concave_field/errors.hpp"

namespace concave_field {

namespace {

constexpr double kPivotTol = 1e-11;

// Standard-form tableau over columns [x (n) | surplus (m) | artificial (m)],
// rows Ax - s + w = b with b >= 0 after sign normalization.
struct Tableau {
    std::size_t rows, cols;
    std::vector<Vec> a;  // rows x cols
    Vec rhs;
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t col) {
        const double piv = a[r][col];
        for (std::size_t j = 0; j < cols; ++j) a[r][j] /= piv;
        rhs[r] /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double factor = a[i][col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= factor * a[r][j];
            rhs[i] -= factor * rhs[r];
        }
        basis[r] = col;
    }
};

// Bland's rule: entering column = lowest index with negative reduced cost,
// leaving row = lowest basis index among the ratio-test minimizers.
LpStatus run_simplex(Tableau& t, const Vec& cost, double& objective, std::size_t max_iters,
                     std::size_t usable_cols) {
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        // Reduced costs via the basis cost row.
        std::size_t enter = usable_cols;
        for (std::size_t j = 0; j < usable_cols; ++j) {
            double red = cost[j];
            for (std::size_t i = 0; i < t.rows; ++i) red -= cost[t.basis[i]] * t.a[i][j];
            if (red < -kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter == usable_cols) {
            objective = 0.0;
            for (std::size_t i = 0; i < t.rows; ++i) objective += cost[t.basis[i]] * t.rhs[i];
            return LpStatus::Optimal;
        }
        std::size_t leave = t.rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.rows; ++i) {
            if (t.a[i][enter] > kPivotTol) {
                const double ratio = t.rhs[i] / t.a[i][enter];
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 &&
                     (leave == t.rows || t.basis[i] < t.basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == t.rows) return LpStatus::Unbounded;
        t.pivot(leave, enter);
    }
    throw NumericalFailure("lp_solve_min: iteration cap reached");
}

} // namespace

LpSolution lp_solve_min(const Vec& c, const std::vector<Vec>& A, const Vec& b,
                        std::size_t max_iters) {
    const std::size_t n = c.size();
    const std::size_t m = A.size();
    if (b.size() != m) throw DomainError("lp_solve_min: A/b size mismatch");
    for (const Vec& row : A)
        if (row.size() != n) throw DomainError("lp_solve_min: A/c size mismatch");

    Tableau t;
    t.rows = m;
    t.cols = n + 2 * m;
    t.a.assign(m, Vec(t.cols, 0.0));
    t.rhs.assign(m, 0.0);
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = b[i] >= 0.0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * A[i][j];
        t.a[i][n + i] = -sign;       // surplus
        t.a[i][n + m + i] = 1.0;     // artificial
        t.rhs[i] = sign * b[i];
        t.basis[i] = n + m + i;
    }

    // Phase 1: drive the artificials to zero.
    Vec phase1_cost(t.cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) phase1_cost[n + m + i] = 1.0;
    double obj1 = 0.0;
    if (run_simplex(t, phase1_cost, obj1, max_iters, t.cols) == LpStatus::Unbounded)
        throw NumericalFailure("lp_solve_min: phase 1 unbounded");
    if (obj1 > 1e-8) return LpSolution{LpStatus::Infeasible, 0.0, {}};

    // Pivot any artificial still sitting in the basis out along a real column.
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n + m) continue;
        bool pivoted = false;
        for (std::size_t j = 0; j < n + m && !pivoted; ++j) {
            if (std::abs(t.a[i][j]) > kPivotTol) {
                t.pivot(i, j);
                pivoted = true;
            }
        }
        // A row with no real pivot is redundant; its rhs is ~0 and it stays inert.
    }

    // Phase 2 over the real columns only.
    Vec phase2_cost(t.cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = c[j];
    double obj2 = 0.0;
    const LpStatus status = run_simplex(t, phase2_cost, obj2, max_iters, n + m);
    LpSolution sol;
    sol.status = status;
    if (status != LpStatus::Optimal) return sol;
    sol.value = obj2;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.rhs[i];
    return sol;
}

} // namespace concave_field
