#pragma once

#include <cstdint>
#include <vector>

#include "onebit/matrix.hpp"

namespace onebit {

/// A point on the probability simplex: entries >= 0, sum == 1.
/// Produced only by project_simplex / uniform so the invariant holds by
/// construction.
struct SimplexVector {
    std::vector<double> v;

    static SimplexVector uniform(std::size_t m);
    std::size_t size() const { return v.size(); }
};

/// Euclidean projection onto the probability simplex, classic
/// sort-then-threshold scan in O(m log m).
SimplexVector project_simplex(const std::vector<double>& point);

/// Largest singular value via power iteration on A^T A.
/// Deterministic start (normalized all-ones), relative-change stop 1e-8,
/// at most 200 iterations. Returns 0 for the zero matrix.
double spectral_norm(const RealMatrix& a);

/// Arithmetic mean of |a_ij| over all entries.
double mean_abs(const RealMatrix& a);

/// Deterministic counter-based random stream (splitmix64). The uniform
/// sequence is a pure function of (seed, draw index), so identical seeds give
/// identical sequences on every platform, and split() derives independent
/// child streams from (seed, key) alone -- parallel workers keyed by trial
/// index reproduce the same draws regardless of scheduling.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double next_uniform();

    /// Standard normal via Box-Muller, cosine branch:
    ///   z = sqrt(-2 ln u1) * cos(2 pi u2),  u1 in (0,1], u2 in [0,1).
    /// Two uniforms per draw, no cached state.
    double next_normal();

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound);

    /// Child stream derived from the construction seed and `key` only;
    /// independent of how many draws this stream has produced.
    RngStream split(std::uint64_t key) const;

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace onebit
