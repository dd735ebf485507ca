#pragma once

#include "strata/numerics.hpp"
#include "strata/sampling.hpp"

#include <string>

namespace strata {

enum class DiscrepancyKind { l2, lp, star_exact, star_grid };

std::string to_string(DiscrepancyKind k);

struct DiscrepancyResult {
  double value = 0.0;
  DiscrepancyKind kind = DiscrepancyKind::l2;
  double p = 2.0;
  int resolution = 0;       // quadrature / lattice resolution, 0 if unused
  bool exact = false;
  bool lower_bound = false;  // star_grid: value never exceeds the true D*
  bool augmented = false;    // star_grid: point coordinates added to the lattice
  int points = 0;
  int dim = 0;
};

/// Squared L2 star discrepancy by Warnock's formula, O(N^2 d).
DiscrepancyResult l2_warnock(const PointSet& ps);

/// p-th power of the L_p discrepancy by the G^d tensor midpoint rule.
DiscrepancyResult lp_quadrature(const PointSet& ps, double p, int resolution,
                                std::size_t budget = kDefaultNodeBudget);

/// Exact star discrepancy in d = 2 over the critical grid, O(N^2).
DiscrepancyResult star_disc_exact_2d(const PointSet& ps);

inline constexpr int kStarExactMaxPoints = 5000;

enum class Augment { automatic, always, never };

struct StarGridOptions {
  int resolution = 64;
  Augment augment = Augment::automatic;
  std::size_t budget = std::size_t{1} << 24;
};

/// Lower bound on D*: open and closed counts on the lattice {j/G} (plus the
/// point coordinates when augmented) and at every point used as a corner.
DiscrepancyResult star_disc_grid(const PointSet& ps, const StarGridOptions& options);

}  // namespace strata
