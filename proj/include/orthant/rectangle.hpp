#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace orthant {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Axis-aligned box prod_i [alpha_i, beta_i]; beta_i may be +inf.
struct Rectangle {
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t dimension() const noexcept { return alpha.size(); }
  bool bounded() const noexcept;
  bool contains(std::span<const double> point, double margin = 0.0) const noexcept;

  /// The positive orthant in n dimensions.
  static Rectangle orthant(std::size_t n);
  /// [lo, hi]^n.
  static Rectangle cube(std::size_t n, double lo, double hi);

  bool operator==(const Rectangle&) const = default;
};

/// Validates alpha_i < beta_i, finite alpha, beta finite or +inf.
Rectangle make_rectangle(std::vector<double> alpha, std::vector<double> beta);

enum class Side { low, high };

struct Face {
  std::size_t index = 0;
  Side side = Side::low;

  bool operator==(const Face&) const = default;
};

}  // namespace orthant
