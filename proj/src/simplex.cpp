#include "concave_field/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "concave_field/errors.hpp"
#include "concave_field/rng.hpp"

namespace concave_field {

namespace {

double checked_sum(const Vec& coords) {
    if (coords.size() < 2) throw DomainError("SimplexPoint: dimension must be >= 2");
    double s = 0.0;
    for (double c : coords) s += c;
    if (std::abs(s - 1.0) > SimplexPoint::kSumTol)
        throw DomainError("SimplexPoint: coordinates must sum to 1 within 1e-12");
    return s;
}

} // namespace

SimplexPoint SimplexPoint::interior(Vec coords) {
    checked_sum(coords);
    for (double c : coords)
        if (!(c > 0.0)) throw DomainError("SimplexPoint: interior point needs all coordinates > 0");
    return SimplexPoint(std::move(coords), true);
}

SimplexPoint SimplexPoint::boundary(Vec coords) {
    checked_sum(coords);
    bool interior = true;
    for (double c : coords) {
        if (c < 0.0) throw DomainError("SimplexPoint: negative coordinate");
        if (c == 0.0) interior = false;
    }
    return SimplexPoint(std::move(coords), interior);
}

SimplexPoint SimplexPoint::interior_renormalized(Vec coords) {
    double s = 0.0;
    for (double c : coords) {
        if (!(c > 0.0)) throw DomainError("SimplexPoint: interior point needs all coordinates > 0");
        s += c;
    }
    if (s <= 0.0) throw DomainError("SimplexPoint: zero mass");
    for (double& c : coords) c /= s;
    // One compensation pass: push residual into the largest coordinate.
    double resid = 1.0;
    for (double c : coords) resid -= c;
    *std::max_element(coords.begin(), coords.end()) += resid;
    return SimplexPoint(std::move(coords), true);
}

SimplexPoint SimplexPoint::barycenter(std::size_t n) {
    return interior_renormalized(Vec(n, 1.0 / static_cast<double>(n)));
}

double SimplexPoint::min_coord() const {
    return *std::min_element(coords_.begin(), coords_.end());
}

SimplexPoint face_center(std::size_t n, std::size_t j, double eps) {
    if (j >= n) throw DomainError("face_center: face index out of range");
    if (!(eps > 0.0) || eps > 1.0 / static_cast<double>(n))
        throw DomainError("face_center: eps must be in (0, 1/n]");
    Vec c(n, (1.0 - eps) / static_cast<double>(n - 1));
    c[j] = eps;
    return SimplexPoint::interior_renormalized(c);
}

CompactSlice::CompactSlice(std::size_t n_, std::size_t k_, std::size_t grid_)
    : n(n_), k(k_), grid(grid_) {
    if (n < 2) throw DomainError("CompactSlice: n must be >= 2");
    if (k < n) throw DomainError("CompactSlice: slice is empty for k < n");
    if (grid < 2) throw DomainError("CompactSlice: grid must be >= 2");
}

namespace {

// Enumerate compositions of g into n nonnegative parts; for each, emit
// floor + span * (m / g) where floor/span place the lattice inside the slice.
void compositions(std::size_t n, std::size_t g, double floor, double span,
                  std::vector<SimplexPoint>& out) {
    const double gd = static_cast<double>(g);
    // Iterative odometer over the first n-1 parts; the last part is g - sum.
    std::vector<std::size_t> parts(n - 1, 0);
    for (;;) {
        std::size_t used = 0;
        for (std::size_t v : parts) used += v;
        if (used <= g) {
            Vec p(n);
            for (std::size_t i = 0; i + 1 < n; ++i)
                p[i] = floor + span * (static_cast<double>(parts[i]) / gd);
            p[n - 1] = floor + span * (static_cast<double>(g - used) / gd);
            out.push_back(SimplexPoint::interior_renormalized(p));
        }
        // Odometer increment with the partial-sum constraint.
        std::size_t i = 0;
        for (; i + 1 < n; ++i) {
            ++parts[i];
            std::size_t total = 0;
            for (std::size_t v : parts) total += v;
            if (total <= g) break;
            parts[i] = 0;
        }
        if (i + 1 >= n) return;
    }
}

} // namespace

std::vector<SimplexPoint> slice_grid(const CompactSlice& slice) {
    const double n = static_cast<double>(slice.n);
    const double floor = 1.0 / static_cast<double>(slice.k);
    const double span = 1.0 - n * floor;
    std::vector<SimplexPoint> out;
    if (span <= 0.0) {
        out.push_back(SimplexPoint::barycenter(slice.n));
        return out;
    }
    compositions(slice.n, slice.grid - 1, floor, span, out);
    return out;
}

std::vector<SimplexPoint> interior_grid(std::size_t n, std::size_t points_per_edge,
                                        double margin) {
    if (n < 2 || points_per_edge < 2) throw DomainError("interior_grid: bad arguments");
    std::vector<SimplexPoint> out;
    compositions(n, points_per_edge - 1, margin, 1.0 - static_cast<double>(n) * margin, out);
    return out;
}

SimplexPoint random_interior_point(std::size_t n, SplitRng& rng, double floor) {
    Vec p(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = rng.exponential(1.0) + floor;
        s += p[i];
    }
    for (double& c : p) c /= s;
    return SimplexPoint::interior_renormalized(p);
}

} // namespace concave_field
