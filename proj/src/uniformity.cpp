#include "strata/uniformity.hpp"

#include <stdexcept>

namespace strata {

double a_n_statistic(const Partition& part, const AxisBox& b) {
  if (b.dim() != part.dim()) throw std::invalid_argument("a_n_statistic: box dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < part.size(); ++i) s += set_box_intersection(part[i], b) / part.measures()[i];
  return s / part.size();
}

IndexCounts index_counts(const Partition& part, const AxisBox& b, double tol) {
  if (b.dim() != part.dim()) throw std::invalid_argument("index_counts: box dimension mismatch");
  IndexCounts c;
  for (int i = 0; i < part.size(); ++i) {
    const double overlap = set_box_intersection(part[i], b), m = part.measures()[i];
    if (overlap >= m - tol) {
      ++c.inside;
    } else if (overlap > tol) {
      ++c.touching;
    }
  }
  return c;
}

double avg_diameter(const Partition& part) {
  double s = 0.0;
  for (const auto& set : part.sets()) s += set_diameter(set);
  return s / part.size();
}

UniformityReport uniformity_sweep(Family family, const std::vector<AxisBox>& boxes, const std::vector<int>& ns,
                                  int dim) {
  UniformityReport rep;
  rep.family = family;
  rep.dim = dim;
  rep.boxes = boxes;
  for (int n : ns) {
    if (family == Family::jittered) {
      try {
        perfect_root(n, dim);
      } catch (const std::invalid_argument&) {
        rep.skipped.push_back(n);
        continue;
      }
    }
    const Partition part = build_partition(PartitionSpec{family, dim, n, {}});
    const double diam = avg_diameter(part);
    for (size_t k = 0; k < boxes.size(); ++k) {
      const auto counts = index_counts(part, boxes[k]);
      UniformityRow row;
      row.n = n;
      row.box = static_cast<int>(k);
      row.box_volume = boxes[k].volume();
      row.a_n = a_n_statistic(part, boxes[k]);
      row.inside_fraction = static_cast<double>(counts.inside) / n;
      row.touching_fraction = static_cast<double>(counts.touching) / n;
      row.avg_diameter = diam;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace strata
