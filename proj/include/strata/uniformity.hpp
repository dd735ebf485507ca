#pragma once

#include "strata/geometry.hpp"

#include <vector>

namespace strata {

/// sum_i |Omega_i cap b| / (N |Omega_i|).  Equals |b| for equivolume partitions.
double a_n_statistic(const Partition& part, const AxisBox& b);

struct IndexCounts {
  int inside = 0;    // I_B: strata contained in b (up to measure zero)
  int touching = 0;  // T_B: strata meeting b in positive but not full measure
};

IndexCounts index_counts(const Partition& part, const AxisBox& b, double tol = kMeasureTol);

/// (1/N) sum_i diam(Omega_i).
double avg_diameter(const Partition& part);

struct UniformityRow {
  int n = 0;
  int box = 0;  // index into UniformityReport::boxes
  double box_volume = 0.0;
  double a_n = 0.0;
  double inside_fraction = 0.0;    // I_B / N
  double touching_fraction = 0.0;  // T_B / N
  double avg_diameter = 0.0;
};

struct UniformityReport {
  Family family = Family::vertical;
  int dim = 2;
  std::vector<AxisBox> boxes;
  std::vector<UniformityRow> rows;
  std::vector<int> skipped;  // N with no member of the family (jittered: not a d-th power)
};

UniformityReport uniformity_sweep(Family family, const std::vector<AxisBox>& boxes, const std::vector<int>& ns,
                                  int dim = 2);

}  // namespace strata
