#ifndef CONCAVE_FIELD_SIMPLEX_HPP
#define CONCAVE_FIELD_SIMPLEX_HPP

#include <cstddef>
#include <vector>

namespace concave_field {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Point of the unit simplex: positive weights summing to 1 (within 1e-12).
// Interior points have all coordinates strictly positive; a boundary-tagged
// point may carry zeros where a check explicitly works on the boundary.
class SimplexPoint {
  public:
    static constexpr double kSumTol = 1e-12;

    // Interior point; throws DomainError unless all coordinates > 0 and sum to 1.
    static SimplexPoint interior(Vec coords);

    // Permits zero coordinates (closed simplex); still validates the sum.
    static SimplexPoint boundary(Vec coords);

    // Rescales to unit sum before validating; for grid constructions whose
    // coordinates carry accumulated rounding.
    static SimplexPoint interior_renormalized(Vec coords);

    static SimplexPoint barycenter(std::size_t n);

    const Vec& coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::size_t dim() const { return coords_.size(); }
    bool is_interior() const { return interior_; }
    double min_coord() const;

  private:
    SimplexPoint(Vec coords, bool interior) : coords_(std::move(coords)), interior_(interior) {}
    Vec coords_;
    bool interior_;
};

// Center of the slice {p_j = eps} through the simplex: coordinate j equals
// eps, the rest split (1 - eps) evenly.
SimplexPoint face_center(std::size_t n, std::size_t j, double eps);

// Compact slice Delta_{n,k} = {p : p_i >= 1/k} with a lattice resolution.
// The slice is nonempty iff k >= n.
struct CompactSlice {
    std::size_t n = 2;
    std::size_t k = 2;    // 1/k coordinate floor
    std::size_t grid = 2; // lattice points per edge

    CompactSlice(std::size_t n_, std::size_t k_, std::size_t grid_);
};

// Barycentric lattice of the closed simplex with `points_per_edge` points
// along each edge (compositions of points_per_edge - 1 into n parts),
// mapped affinely into Delta_{n,k}. All returned points lie in the slice.
std::vector<SimplexPoint> slice_grid(const CompactSlice& slice);

// Lattice of the whole simplex, shrunk slightly so points stay interior.
std::vector<SimplexPoint> interior_grid(std::size_t n, std::size_t points_per_edge,
                                        double margin = 1e-9);

// Uniform (Dirichlet(1,..,1)) random interior point.
class SplitRng;
SimplexPoint random_interior_point(std::size_t n, SplitRng& rng, double floor = 1e-9);

} // namespace concave_field

#endif
