#ifndef CONCAVE_FIELD_RNG_HPP
#define CONCAVE_FIELD_RNG_HPP

#include <cmath>
#include <cstdint>

#include "concave_field/errors.hpp"

namespace concave_field {

// Counter-based splittable generator in the SplitMix64 family
// (Steele/Lea/Flood; finalizer by Vigna). A stream is keyed by
// (seed, stream index); draw i of a stream is a pure function of
// (key, i), so replicas can run in parallel with no shared state
// and no stream overlap.
class SplitRng {
  public:
    SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(derive_key(seed, stream)), counter_(0) {}

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        // Mix the pair so that nearby (seed, stream) pairs land far apart.
        std::uint64_t k = mix(seed + 0x9E3779B97F4A7C15ULL);
        k = mix(k ^ mix(stream + 0xBF58476D1CE4E5B9ULL));
        return k;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        return mix(z);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1]; safe to pass to log().
    double next_double_pos() { return 1.0 - next_double(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    double exponential(double rate) {
        if (rate <= 0.0) throw DomainError("exponential: rate must be > 0");
        return -std::log(next_double_pos()) / rate;
    }

    // Box-Muller; no cached spare so the draw sequence stays a simple
    // function of the counter.
    double normal() {
        const double u1 = next_double_pos();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Marsaglia-Tsang for shape >= 1, boosted by u^{1/shape} below 1.
    // The beta parameter follows the density beta^k x^{k-1} e^{-beta x} / Gamma(k).
    double gamma(double shape, double beta) {
        if (shape <= 0.0 || beta <= 0.0) throw DomainError("gamma: shape and beta must be > 0");
        double boost = 1.0;
        double k = shape;
        if (k < 1.0) {
            boost = std::pow(next_double_pos(), 1.0 / k);
            k += 1.0;
        }
        const double d = k - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = next_double_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v / beta;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v / beta;
        }
    }

    std::uint64_t poisson(double mean) {
        if (mean < 0.0) throw DomainError("poisson: mean must be >= 0");
        if (mean < 30.0) {
            // Knuth product-of-uniforms.
            const double limit = std::exp(-mean);
            std::uint64_t k = 0;
            double prod = next_double_pos();
            while (prod > limit) {
                ++k;
                prod *= next_double_pos();
            }
            return k;
        }
        // Split recursively: Poisson(m) = Poisson(m/2) + Poisson(m - m/2)
        // stays exact and keeps the rejection-free path above.
        // For large means use the PTRS-like normal tail would be faster,
        // but splitting is exact and the means here are modest.
        const std::uint64_t a = poisson(mean * 0.5);
        const std::uint64_t b = poisson(mean - mean * 0.5);
        return a + b;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace concave_field

#endif
