#include "orthant/tridiagonal.hpp"

#include "orthant/error.hpp"

namespace orthant {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
                       std::span<double> rhs, std::span<double> scratch) {
  const std::size_t m = diag.size();
  if (lower.size() != m || upper.size() != m || rhs.size() != m || scratch.size() < m) {
    throw Error(ErrorKind::invalid_argument, "tridiagonal system: size mismatch");
  }
  if (m == 0) return;
  double pivot = diag[0];
  if (pivot == 0.0) throw Error(ErrorKind::numeric, "tridiagonal system is singular");
  scratch[0] = upper[0] / pivot;
  rhs[0] /= pivot;
  for (std::size_t k = 1; k < m; ++k) {
    pivot = diag[k] - lower[k] * scratch[k - 1];
    if (pivot == 0.0) throw Error(ErrorKind::numeric, "tridiagonal system is singular");
    scratch[k] = upper[k] / pivot;
    rhs[k] = (rhs[k] - lower[k] * rhs[k - 1]) / pivot;
  }
  for (std::size_t k = m - 1; k-- > 0;) rhs[k] -= scratch[k] * rhs[k + 1];
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  std::vector<double> x(rhs.begin(), rhs.end()), scratch(rhs.size());
  solve_tridiagonal(lower, diag, upper, x, scratch);
  return x;
}

}  // namespace orthant
