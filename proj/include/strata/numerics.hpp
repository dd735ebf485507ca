#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace strata {

/// Default cap on the number of quadrature / lattice nodes held at once.
inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 25;

/// Recursive pairwise summation; the reduction tree depends only on the
/// length, so results do not depend on thread scheduling.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// G^d, or throws std::length_error when it exceeds `budget`.
inline std::size_t checked_grid_size(long long resolution, int dim, std::size_t budget) {
  if (resolution < 1 || dim < 1) throw std::invalid_argument("grid needs resolution >= 1 and dim >= 1");
  double total = std::pow(static_cast<double>(resolution), dim);
  if (total > static_cast<double>(budget)) {
    throw std::length_error("grid of " + std::to_string(resolution) + "^" + std::to_string(dim) +
                            " nodes exceeds the node budget of " + std::to_string(budget));
  }
  return static_cast<std::size_t>(std::llround(total));
}

/// |t|^p with the common integer powers spelled out.
inline double abs_pow(double t, double p) {
  t = std::abs(t);
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  if (p == 4.0) {
    t *= t;
    return t * t;
  }
  return std::pow(t, p);
}

}  // namespace strata
