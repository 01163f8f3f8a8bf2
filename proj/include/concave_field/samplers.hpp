#ifndef CONCAVE_FIELD_SAMPLERS_HPP
#define CONCAVE_FIELD_SAMPLERS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "concave_field/coefficient_model.hpp"
#include "concave_field/concave_fn.hpp"
#include "concave_field/simplex.hpp"

namespace concave_field {

class SplitRng;

// K i.i.d. hyperplanes under the scaled-minimum normalization a_K = K^{1/(n+alpha)}.
struct HardminSampleSpec {
    CoefficientModel model;
    std::size_t K = 1;

    HardminSampleSpec(CoefficientModel m, std::size_t k);
    double scale() const; // K^{1/(n+alpha)}
};

// Truncation of the limiting point process to [0, M]^n, together with the
// compact slice on which the envelope is certified exact: every point
// outside the box gives a plane whose value on the slice is at least
// M * min_i p_i >= M / k, so once M / k dominates the envelope's sup on the
// slice, missing points cannot change it there.
struct PoissonEnvelope {
    std::vector<Vec> points;
    double box = 0.0;        // final M
    std::size_t slice_k = 0; // certified on Delta_{n,k}
    std::size_t n = 0;

    ConcaveFn envelope() const; // PolyhedralMin over the points
    // Index of the point minimizing <p, x>.
    std::size_t argmin_at(const SimplexPoint& p) const;
};

enum class DiagonalRegime { SuperLog, LogShift, Linear };

// Joint growth of the softmin parameter with K. SuperLog uses
// lambda_K = K^{1/(n+alpha)} (log K)^2, LogShift(c) uses
// c K^{1/(n+alpha)} log K, Linear(c) uses c K^{1/(n+alpha)}.
struct DiagonalSpec {
    CoefficientModel model;
    DiagonalRegime regime = DiagonalRegime::SuperLog;
    double c = 1.0;
    std::size_t K = 3;

    DiagonalSpec(CoefficientModel m, DiagonalRegime r, double c_, std::size_t k);
    double lambda_K() const;
    double scale() const;  // K^{1/(n+alpha)}
    double offset() const; // -K^{1/(n+alpha)} log K / lambda_K
};

// Softmin of K i.i.d. planes at fixed lambda, no scaling (the regime with a
// deterministic large-K limit).
ConcaveFn sample_softmin_fixed_lambda(const CoefficientModel& model, std::size_t K, double lambda,
                                      SplitRng& rng);

// The deterministic limit: -(1/lambda) cgf(-lambda p).
double eval_deterministic_limit(const CoefficientModel& model, double lambda,
                                const SimplexPoint& p);
ConcaveFn deterministic_limit_fn(const CoefficientModel& model, double lambda);

// Scaled hardmin over K planes (each coefficient vector multiplied by
// K^{1/(n+alpha)}), materialized as a polyhedral function.
ConcaveFn sample_hardmin_scaled(const HardminSampleSpec& spec, SplitRng& rng);

// Streaming evaluation of the scaled hardmin at fixed points: one replica's
// values without materializing K planes.
Vec hardmin_values_at(const HardminSampleSpec& spec, const std::vector<SimplexPoint>& at,
                      SplitRng& rng);

// Values of the normalized diagonal softmin at fixed points (offset included).
Vec diagonal_values_at(const DiagonalSpec& spec, const std::vector<SimplexPoint>& at,
                       SplitRng& rng);

// Values of the unscaled fixed-lambda softmin at fixed points; one replica,
// without materializing K planes.
Vec softmin_values_at(const CoefficientModel& model, std::size_t K, double lambda,
                      const std::vector<SimplexPoint>& at, SplitRng& rng);

struct PoissonOptions {
    double initial_box = 2.0;
    double max_box = 1e6;
};

// Realization of the limiting point process, truncated and auto-expanded
// until the envelope is certified exact on the slice. Requires product-form
// h (every model here). Throws TruncationFailure beyond max_box.
PoissonEnvelope sample_poisson_envelope(const CoefficientModel& model, const CompactSlice& slice,
                                        SplitRng& rng, const PoissonOptions& opts = {});

// Same construction with the certificate specialized to the given evaluation
// points: expansion stops once M * min_i p_i dominates the envelope value at
// every p in `at`. Much smaller boxes near the boundary than any slice
// certificate; the returned envelope is exact at those points only.
PoissonEnvelope sample_poisson_envelope_at(const CoefficientModel& model,
                                           const std::vector<SimplexPoint>& at, SplitRng& rng,
                                           const PoissonOptions& opts = {});

// Normalized diagonal softmin as a function: scale * m_lambda{<p, x_k>} + offset.
// Signed in the Linear regime (the limit explodes to -inf at the boundary).
ConcaveFn sample_diagonal(const DiagonalSpec& spec, SplitRng& rng);

struct PsiTildeValue {
    double value = 0.0;
    // Expected mass of the discarded tail sum E sum_{x outside box} e^{-c<p,x>};
    // a bound on how much the truncation can move the log-sum value downward.
    double tail_mean_bound = 0.0;
};

// Softmin-type functional of the point process: -(1/c) log sum_x e^{-c <p, x>}.
PsiTildeValue eval_psi_tilde(const PoissonEnvelope& envelope, const CoefficientModel& model,
                             double c, const SimplexPoint& p);

} // namespace concave_field

#endif
