#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace strata {

using Vector = Eigen::VectorXd;

inline constexpr double kSqrt2 = 1.414213562373095048801688724209698;

/// Tolerance used for measure identities (partition sums, containment).
inline constexpr double kMeasureTol = 1e-12;

namespace detail {

template <typename Scalar>
constexpr Scalar positive_square(Scalar t) {
  return t > Scalar(0) ? t * t : Scalar(0);
}

/// Unchecked kernel of halfplane_box_area; callers guarantee c, x, y >= 0.
template <typename Scalar>
constexpr Scalar clipped_triangle_area(Scalar c, Scalar x, Scalar y) {
  if (c <= Scalar(0)) return Scalar(0);
  if (c >= x + y) return x * y;
  Scalar a = (positive_square(c) - positive_square(c - x) -
              positive_square(c - y)) / Scalar(2);
  return a < Scalar(0) ? Scalar(0) : a;
}

}  // namespace detail

/// Area of {(s, t) in [0, x] x [0, y] : s + t <= c}.
///
/// Closed form of the clipped right triangle below the anti-diagonal line at
/// offset c:  c^2/2 - (c-x)_+^2/2 - (c-y)_+^2/2 + (c-x-y)_+^2/2.  The last
/// term only contributes once c >= x + y, where the result is the full box.
template <typename Scalar>
Scalar halfplane_box_area(Scalar c, Scalar x, Scalar y) {
  if (!(c >= Scalar(0)) || !(x >= Scalar(0)) || !(y >= Scalar(0))) {
    throw std::domain_error("halfplane_box_area: arguments must be non-negative");
  }
  return detail::clipped_triangle_area(c, x, y);
}

/// Half-open box [lo, hi) inside the unit cube.
struct AxisBox {
  Vector lo;
  Vector hi;

  static AxisBox make(Vector lo, Vector hi);
  /// The anchored box [0, corner).
  static AxisBox anchored(const Vector& corner);
  static AxisBox unit(int dim);

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const { return (hi - lo).cwiseMax(0.0).prod(); }
};

/// Lebesgue measure of the anchored box [0, corner).
inline double anchored_volume(const Eigen::Ref<const Vector>& corner) {
  return corner.prod();
}

// Stratum variants.  Indices are zero-based.

/// {x : index/count <= x_1 <= (index+1)/count} in [0,1]^dim.
struct VerticalStrip {
  int index = 0;
  int count = 1;
  int dim = 2;
};

/// Part of the unit square between the anti-diagonal lines at distances
/// v_lo < v_hi from the origin (lines x + y = v*sqrt(2)).
struct DiagonalSlice {
  double v_lo = 0.0;
  double v_hi = kSqrt2;
};

/// Cube of side 1/m with lower corner cell/m.
struct GridCell {
  std::vector<int> cell;
  int m = 1;
};

struct AxisRegion {
  AxisBox box;
};

/// Finite union of non-overlapping axis boxes; used for hand-built strata
/// that are not a single box (e.g. an L-shaped remainder).
struct BoxUnion {
  std::vector<AxisBox> boxes;
};

using PartitionSet =
    std::variant<VerticalStrip, DiagonalSlice, GridCell, AxisRegion, BoxUnion>;

int set_dim(const PartitionSet& s);
double set_measure(const PartitionSet& s);
double set_box_intersection(const PartitionSet& s, const AxisBox& b);
/// Measure of s intersected with the anchored box [0, corner).
double set_anchored_intersection(const PartitionSet& s,
                                 const Eigen::Ref<const Vector>& corner);
double set_diameter(const PartitionSet& s);
/// Closed-set membership with slack `tol`.
bool set_contains(const PartitionSet& s, const Eigen::Ref<const Vector>& x,
                  double tol = 1e-12);
std::string set_describe(const PartitionSet& s);

enum class Family { diag, equivolume_diag, equidistant_diag, vertical, jittered, custom };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// What build_partition consumes; also the on-disk partition description.
struct PartitionSpec {
  Family family = Family::equivolume_diag;
  int dim = 2;
  int n = 2;
  std::vector<double> v;  // cut distances, only for Family::diag
};

/// Ordered strata covering [0,1]^d.  Immutable after construction.
class Partition {
 public:
  /// Validates dimensions, positive measures and the total-measure identity.
  Partition(Family family, int dim, std::vector<PartitionSet> sets,
            std::vector<double> cuts = {});

  Family family() const { return family_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(sets_.size()); }
  const std::vector<PartitionSet>& sets() const { return sets_; }
  const PartitionSet& operator[](int i) const { return sets_[static_cast<size_t>(i)]; }
  /// Cut distances v_1 < ... < v_{N-1} for diagonal families, empty otherwise.
  const std::vector<double>& cuts() const { return cuts_; }
  const Vector& measures() const { return measures_; }
  bool equivolume() const { return equivolume_; }

  /// q_i = |Omega_i cap [0, anchor)| / |Omega_i| for all i, written to q.
  void success_profile(const Eigen::Ref<const Vector>& anchor,
                       Eigen::Ref<Vector> q) const;

 private:
  void diag_profile(double x, double y, Eigen::Ref<Vector> q) const;

  Family family_;
  int dim_;
  std::vector<PartitionSet> sets_;
  std::vector<double> cuts_;
  Vector measures_;
  Vector inv_measures_;
  std::vector<double> offsets_;  // sqrt(2) * {0, v_1, ..., v_{N-1}, sqrt(2)}
  bool equivolume_ = false;
};

Partition build_partition(const PartitionSpec& spec);

Partition diag_partition(std::span<const double> v);
Partition equivolume_diag_partition(int n);
Partition equidistant_diag_partition(int n);
Partition vertical_partition(int n, int dim);
Partition jittered_partition(int m, int dim);
/// N-1 vertical slabs tiling [delta,1]^2 plus the L-shaped remainder.
Partition corner_heavy_partition(int n, double delta);

std::vector<double> equivolume_diag_cuts(int n);
std::vector<double> equidistant_diag_cuts(int n);

/// Integer m with m^dim == n, or throws.
int perfect_root(int n, int dim);

struct PartitionReport {
  double measure_sum = 0.0;
  bool equivolume = false;
  bool measure_ok = false;
  Vector measures;
};

PartitionReport validate_partition(const Partition& p);

struct SuccessProfile {
  Vector q;
  Vector anchor;
};

SuccessProfile success_profile(const Partition& p, const Vector& anchor);

/// E Z_x - |[0, x)| = mean(q) - vol.
double bias_at(const Partition& p, const Vector& anchor);

}  // namespace strata
