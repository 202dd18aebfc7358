#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace orthant {

/// Thomas algorithm for A x = d with sub-diagonal `lower` (lower[0] unused),
/// diagonal `diag` and super-diagonal `upper` (upper[m-1] unused). No
/// pivoting: callers pass diagonally dominant systems. `rhs` is overwritten
/// with the solution; `scratch` must hold m entries.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
                       std::span<double> rhs, std::span<double> scratch);

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace orthant
