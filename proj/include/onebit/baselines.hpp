#pragma once

#include <vector>

#include "onebit/model.hpp"

namespace onebit {

struct BruteForceResult {
    BitVector x;
    double value = 0.0;
};

/// Exhaustive minimizer of max_l a_l^T x over {-1,+1}^n. Gray-code
/// enumeration with O(m) incremental objective updates; ties broken by
/// lexicographically smallest x (-1 before +1). Refuses n > 26.
BruteForceResult brute_force(const CiModel& model);

/// Single-user instance derived from a set of positive integers: symbol
/// direction 1+j with boundary directions (1, j) and channel a + j a, so the
/// model matrix is exactly -[[a, -a], [a, a]]. The minimum objective equals
/// -sum(a) iff the integers admit a perfect partition.
struct PartitionInstance {
    std::vector<long long> a;
    CiModel model;
};

PartitionInstance partition_instance(const std::vector<long long>& a);

/// Zero-forcing direction H^H (H H^H)^{-1} s mapped to the real stacking and
/// quantized entrywise. Throws std::runtime_error when H H^H is numerically
/// rank-deficient (condition estimate beyond 1e12).
BitVector zf_quantized(const ChannelMatrix& h, const SymbolVector& s, int order);

/// Continuous zero-forcing signal normalized to unit power; the
/// infinite-resolution BER baseline.
std::vector<cplx> zf_unquantized(const ChannelMatrix& h, const SymbolVector& s, int order);

}  // namespace onebit
