#pragma once

#include <cstdint>
#include <vector>

#include "onebit/matrix.hpp"

namespace onebit::oracles {

/// Simplex projection by KKT support enumeration: tries every support set,
/// keeps the feasible stationary candidate closest to the input. O(2^m m),
/// usable for m <= ~20; independent of the sort-threshold implementation.
std::vector<double> kkt_project_simplex(const std::vector<double>& point);

/// Grid minimizer of (x - a)^2 + b|x| over [-1, 1] with the given step;
/// returns the first grid point attaining the minimum.
double grid_min_scalar(double a, double b, double step);

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
double max_eigenvalue_jacobi(const RealMatrix& sym);

/// Subset-sum check: can `a` be split into two parts with equal sums?
bool has_perfect_partition(const std::vector<long long>& a);

/// Gaussian upper-tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

}  // namespace onebit::oracles
