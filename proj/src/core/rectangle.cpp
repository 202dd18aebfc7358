#include "orthant/rectangle.hpp"

#include <cmath>
#include <string>

#include "orthant/error.hpp"

namespace orthant {

bool Rectangle::bounded() const noexcept {
  for (double b : beta) {
    if (!std::isfinite(b)) return false;
  }
  return true;
}

bool Rectangle::contains(std::span<const double> point, double margin) const noexcept {
  if (point.size() != alpha.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(point[i] >= alpha[i] - margin) || !(point[i] <= beta[i] + margin)) return false;
  }
  return true;
}

Rectangle Rectangle::orthant(std::size_t n) {
  return Rectangle{std::vector<double>(n, 0.0), std::vector<double>(n, kInfinity)};
}

Rectangle Rectangle::cube(std::size_t n, double lo, double hi) {
  return make_rectangle(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

Rectangle make_rectangle(std::vector<double> alpha, std::vector<double> beta) {
  if (alpha.empty()) throw Error(ErrorKind::invalid_argument, "rectangle must have at least one axis");
  if (alpha.size() != beta.size()) {
    throw Error(ErrorKind::invalid_argument, "rectangle alpha has " + std::to_string(alpha.size()) +
                                                 " entries but beta has " + std::to_string(beta.size()));
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const std::string axis = std::to_string(i + 1);
    if (!std::isfinite(alpha[i])) throw Error(ErrorKind::invalid_argument, "rectangle alpha[" + axis + "] is not finite");
    if (std::isnan(beta[i]) || beta[i] == -kInfinity) {
      throw Error(ErrorKind::invalid_argument, "rectangle beta[" + axis + "] must be a number or +inf");
    }
    if (!(alpha[i] < beta[i])) {
      throw Error(ErrorKind::invalid_argument, "rectangle requires alpha < beta on axis " + axis);
    }
  }
  return Rectangle{std::move(alpha), std::move(beta)};
}

}  // namespace orthant
