#include "strata/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace strata {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

bool in_unit_cube(const Eigen::Ref<const Vector>& x, double tol) {
  return (x.array() >= -tol).all() && (x.array() <= 1.0 + tol).all();
}

double box_overlap(const Vector& lo, const Vector& hi, const AxisBox& b) {
  double v = 1.0;
  for (Eigen::Index k = 0; k < lo.size(); ++k) {
    double w = std::min(hi[k], b.hi[k]) - std::max(lo[k], b.lo[k]);
    if (w <= 0.0) return 0.0;
    v *= w;
  }
  return v;
}

// |slice cap [0,x]x[0,y]|
double slice_anchored(const DiagonalSlice& s, double x, double y) {
  return detail::clipped_triangle_area(s.v_hi * kSqrt2, x, y) -
         detail::clipped_triangle_area(s.v_lo * kSqrt2, x, y);
}

void require_dim(const PartitionSet& s, int dim) {
  if (set_dim(s) != dim) throw std::invalid_argument("dimension mismatch between stratum and box");
}

}  // namespace

AxisBox AxisBox::make(Vector lo, Vector hi) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw std::invalid_argument("AxisBox: lo and hi must have the same positive dimension");
  }
  if ((lo.array() < 0.0).any() || (hi.array() > 1.0).any() || (lo.array() > hi.array()).any()) {
    throw std::invalid_argument("AxisBox: need 0 <= lo <= hi <= 1 componentwise");
  }
  return AxisBox{std::move(lo), std::move(hi)};
}

AxisBox AxisBox::anchored(const Vector& corner) {
  return make(Vector::Zero(corner.size()), corner);
}

AxisBox AxisBox::unit(int dim) { return AxisBox{Vector::Zero(dim), Vector::Ones(dim)}; }

int set_dim(const PartitionSet& s) {
  return std::visit(overloaded{
                        [](const VerticalStrip& v) { return v.dim; },
                        [](const DiagonalSlice&) { return 2; },
                        [](const GridCell& c) { return static_cast<int>(c.cell.size()); },
                        [](const AxisRegion& r) { return r.box.dim(); },
                        [](const BoxUnion& u) { return u.boxes.empty() ? 0 : u.boxes.front().dim(); },
                    },
                    s);
}

double set_measure(const PartitionSet& s) {
  return std::visit(
      overloaded{
          [](const VerticalStrip& v) { return 1.0 / v.count; },
          [](const DiagonalSlice& d) { return slice_anchored(d, 1.0, 1.0); },
          [](const GridCell& c) { return std::pow(1.0 / c.m, static_cast<double>(c.cell.size())); },
          [](const AxisRegion& r) { return r.box.volume(); },
          [](const BoxUnion& u) {
            double v = 0.0;
            for (const auto& b : u.boxes) v += b.volume();
            return v;
          },
      },
      s);
}

double set_box_intersection(const PartitionSet& s, const AxisBox& b) {
  require_dim(s, b.dim());
  return std::visit(
      overloaded{
          [&](const VerticalStrip& v) {
            Vector lo = Vector::Zero(v.dim), hi = Vector::Ones(v.dim);
            lo[0] = static_cast<double>(v.index) / v.count;
            hi[0] = static_cast<double>(v.index + 1) / v.count;
            return box_overlap(lo, hi, b);
          },
          [&](const DiagonalSlice& d) {
            // inclusion-exclusion over the four anchored corners of [lo, hi)
            return slice_anchored(d, b.hi[0], b.hi[1]) - slice_anchored(d, b.lo[0], b.hi[1]) -
                   slice_anchored(d, b.hi[0], b.lo[1]) + slice_anchored(d, b.lo[0], b.lo[1]);
          },
          [&](const GridCell& c) {
            Vector lo(static_cast<Eigen::Index>(c.cell.size()));
            for (size_t k = 0; k < c.cell.size(); ++k) lo[static_cast<Eigen::Index>(k)] = static_cast<double>(c.cell[k]) / c.m;
            Vector hi = lo.array() + 1.0 / c.m;
            return box_overlap(lo, hi, b);
          },
          [&](const AxisRegion& r) { return box_overlap(r.box.lo, r.box.hi, b); },
          [&](const BoxUnion& u) {
            double v = 0.0;
            for (const auto& part : u.boxes) v += box_overlap(part.lo, part.hi, b);
            return v;
          },
      },
      s);
}

double set_anchored_intersection(const PartitionSet& s, const Eigen::Ref<const Vector>& corner) {
  if (const auto* d = std::get_if<DiagonalSlice>(&s)) return slice_anchored(*d, corner[0], corner[1]);
  return set_box_intersection(s, AxisBox{Vector::Zero(corner.size()), corner});
}

double set_diameter(const PartitionSet& s) {
  return std::visit(
      overloaded{
          [](const VerticalStrip& v) {
            double w = 1.0 / v.count;
            return std::sqrt(w * w + (v.dim - 1));
          },
          [](const DiagonalSlice& d) {
            const double lo = d.v_lo * kSqrt2, hi = d.v_hi * kSqrt2;
            std::vector<std::array<double, 2>> pts;
            for (std::array<double, 2> c : {std::array{0.0, 0.0}, std::array{1.0, 0.0},
                                            std::array{0.0, 1.0}, std::array{1.0, 1.0}}) {
              double s = c[0] + c[1];
              if (s >= lo && s <= hi) pts.push_back(c);
            }
            for (double c : {lo, hi}) {
              if (c <= 1.0) {
                pts.push_back({0.0, c});
                pts.push_back({c, 0.0});
              } else {
                pts.push_back({1.0, c - 1.0});
                pts.push_back({c - 1.0, 1.0});
              }
            }
            double best = 0.0;
            for (size_t i = 0; i < pts.size(); ++i)
              for (size_t j = i + 1; j < pts.size(); ++j)
                best = std::max(best, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
            return best;
          },
          [](const GridCell& c) { return std::sqrt(static_cast<double>(c.cell.size())) / c.m; },
          [](const AxisRegion& r) { return (r.box.hi - r.box.lo).norm(); },
          [](const BoxUnion& u) {
            double best = 0.0;
            for (const auto& a : u.boxes) {
              for (const auto& b : u.boxes) {
                Vector span = (a.hi - b.lo).cwiseMax(b.hi - a.lo);
                best = std::max(best, span.norm());
              }
            }
            return best;
          },
      },
      s);
}

bool set_contains(const PartitionSet& s, const Eigen::Ref<const Vector>& x, double tol) {
  if (x.size() != set_dim(s) || !in_unit_cube(x, tol)) return false;
  auto in_box = [&](const Vector& lo, const Vector& hi) {
    return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
  };
  return std::visit(
      overloaded{
          [&](const VerticalStrip& v) {
            return x[0] >= static_cast<double>(v.index) / v.count - tol &&
                   x[0] <= static_cast<double>(v.index + 1) / v.count + tol;
          },
          [&](const DiagonalSlice& d) {
            double s = x[0] + x[1];
            return s >= d.v_lo * kSqrt2 - tol && s <= d.v_hi * kSqrt2 + tol;
          },
          [&](const GridCell& c) {
            for (size_t k = 0; k < c.cell.size(); ++k) {
              double lo = static_cast<double>(c.cell[k]) / c.m;
              auto xk = x[static_cast<Eigen::Index>(k)];
              if (xk < lo - tol || xk > lo + 1.0 / c.m + tol) return false;
            }
            return true;
          },
          [&](const AxisRegion& r) { return in_box(r.box.lo, r.box.hi); },
          [&](const BoxUnion& u) {
            return std::any_of(u.boxes.begin(), u.boxes.end(),
                               [&](const AxisBox& b) { return in_box(b.lo, b.hi); });
          },
      },
      s);
}

std::string set_describe(const PartitionSet& s) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const VerticalStrip& v) { os << "strip(" << v.index << "/" << v.count << ", d=" << v.dim << ")"; },
                 [&](const DiagonalSlice& d) { os << "slice(" << d.v_lo << ", " << d.v_hi << ")"; },
                 [&](const GridCell& c) {
                   os << "cell(";
                   for (size_t k = 0; k < c.cell.size(); ++k) os << (k ? "," : "") << c.cell[k];
                   os << "; m=" << c.m << ")";
                 },
                 [&](const AxisRegion& r) { os << "box(" << r.box.lo.transpose() << " | " << r.box.hi.transpose() << ")"; },
                 [&](const BoxUnion& u) { os << "union(" << u.boxes.size() << " boxes)"; },
             },
             s);
  return os.str();
}

std::string to_string(Family f) {
  switch (f) {
    case Family::diag: return "diag";
    case Family::equivolume_diag: return "equivolume_diag";
    case Family::equidistant_diag: return "equidistant_diag";
    case Family::vertical: return "vertical";
    case Family::jittered: return "jittered";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::diag, Family::equivolume_diag, Family::equidistant_diag, Family::vertical,
                   Family::jittered, Family::custom}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown partition family '" + name + "'");
}

Partition::Partition(Family family, int dim, std::vector<PartitionSet> sets, std::vector<double> cuts)
    : family_(family), dim_(dim), sets_(std::move(sets)), cuts_(std::move(cuts)) {
  if (dim_ < 1) throw std::invalid_argument("Partition: dimension must be >= 1");
  if (sets_.empty()) throw std::invalid_argument("Partition: needs at least one stratum");
  const auto n = static_cast<Eigen::Index>(sets_.size());
  measures_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = sets_[static_cast<size_t>(i)];
    if (set_dim(s) != dim_) throw std::invalid_argument("Partition: stratum dimension mismatch");
    measures_[i] = set_measure(s);
    if (!(measures_[i] > 0.0)) {
      throw std::invalid_argument("Partition: stratum " + set_describe(s) + " has zero measure");
    }
  }
  const double total = measures_.sum();
  if (std::abs(total - 1.0) > kMeasureTol) {
    throw std::invalid_argument("Partition: strata measures sum to " + std::to_string(total));
  }
  inv_measures_ = measures_.cwiseInverse();
  equivolume_ = (measures_.array() - 1.0 / static_cast<double>(n)).abs().maxCoeff() < kMeasureTol;

  const bool diagonal = family_ == Family::diag || family_ == Family::equivolume_diag ||
                        family_ == Family::equidistant_diag;
  if (diagonal) {
    offsets_.reserve(cuts_.size() + 2);
    offsets_.push_back(0.0);
    for (double v : cuts_) offsets_.push_back(v * kSqrt2);
    offsets_.push_back(2.0);
  }
}

void Partition::diag_profile(double x, double y, Eigen::Ref<Vector> q) const {
  // each slice is the difference of two consecutive clipped triangles
  double prev = 0.0;
  const auto n = static_cast<Eigen::Index>(sets_.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    double next = detail::clipped_triangle_area(offsets_[static_cast<size_t>(i) + 1], x, y);
    q[i] = (next - prev) * inv_measures_[i];
    prev = next;
  }
}

void Partition::success_profile(const Eigen::Ref<const Vector>& anchor, Eigen::Ref<Vector> q) const {
  const auto n = static_cast<Eigen::Index>(sets_.size());
  if (!offsets_.empty()) {
    diag_profile(anchor[0], anchor[1], q);
  } else if (family_ == Family::vertical) {
    const double rest = anchor.tail(dim_ - 1).prod();
    const double scaled = anchor[0] * static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) q[i] = clamp01(scaled - static_cast<double>(i)) * rest;
  } else if (family_ == Family::jittered) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& c = std::get<GridCell>(sets_[static_cast<size_t>(i)]);
      double v = 1.0;
      for (int k = 0; k < dim_ && v > 0.0; ++k) v *= clamp01(anchor[k] * c.m - c.cell[static_cast<size_t>(k)]);
      q[i] = v;
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      q[i] = std::clamp(set_anchored_intersection(sets_[static_cast<size_t>(i)], anchor) * inv_measures_[i], 0.0, 1.0);
    }
  }
}

std::vector<double> equivolume_diag_cuts(int n) {
  if (n < 1) throw std::invalid_argument("equivolume_diag: n must be >= 1");
  std::vector<double> v;
  for (int i = 1; i < n; ++i) {
    v.push_back(i <= n / 2 ? std::sqrt(static_cast<double>(i) / n)
                           : kSqrt2 - std::sqrt(static_cast<double>(n - i) / n));
  }
  return v;
}

std::vector<double> equidistant_diag_cuts(int n) {
  if (n < 1) throw std::invalid_argument("equidistant_diag: n must be >= 1");
  std::vector<double> v;
  for (int i = 1; i < n; ++i) v.push_back(kSqrt2 * i / n);
  return v;
}

namespace {

Partition diag_family(Family family, std::span<const double> v) {
  double prev = 0.0;
  for (double c : v) {
    if (!(c > prev) || !(c < kSqrt2)) {
      throw std::invalid_argument("diagonal cuts must be strictly increasing in (0, sqrt(2))");
    }
    prev = c;
  }
  std::vector<PartitionSet> sets;
  sets.reserve(v.size() + 1);
  double lo = 0.0;
  for (double c : v) {
    sets.emplace_back(DiagonalSlice{lo, c});
    lo = c;
  }
  sets.emplace_back(DiagonalSlice{lo, kSqrt2});
  return Partition(family, 2, std::move(sets), std::vector<double>(v.begin(), v.end()));
}

}  // namespace

Partition diag_partition(std::span<const double> v) { return diag_family(Family::diag, v); }

Partition equivolume_diag_partition(int n) {
  auto v = equivolume_diag_cuts(n);
  return diag_family(Family::equivolume_diag, v);
}

Partition equidistant_diag_partition(int n) {
  auto v = equidistant_diag_cuts(n);
  return diag_family(Family::equidistant_diag, v);
}

Partition vertical_partition(int n, int dim) {
  if (n < 1 || dim < 1) throw std::invalid_argument("vertical: need n >= 1 and dim >= 1");
  std::vector<PartitionSet> sets;
  sets.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) sets.emplace_back(VerticalStrip{i, n, dim});
  return Partition(Family::vertical, dim, std::move(sets));
}

Partition jittered_partition(int m, int dim) {
  if (m < 1 || dim < 1) throw std::invalid_argument("jittered: need m >= 1 and dim >= 1");
  const double total = std::pow(static_cast<double>(m), dim);
  if (total > 1e8) throw std::length_error("jittered: too many cells");
  const int n = static_cast<int>(std::lround(total));
  std::vector<PartitionSet> sets;
  sets.reserve(static_cast<size_t>(n));
  std::vector<int> cell(static_cast<size_t>(dim), 0);
  for (int i = 0; i < n; ++i) {
    sets.emplace_back(GridCell{cell, m});
    // first coordinate varies fastest
    for (size_t k = 0; k < cell.size(); ++k) {
      if (++cell[k] < m) break;
      cell[k] = 0;
    }
  }
  return Partition(Family::jittered, dim, std::move(sets));
}

Partition corner_heavy_partition(int n, double delta) {
  if (n < 2) throw std::invalid_argument("corner_heavy: n must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("corner_heavy: delta must lie in (0,1)");
  std::vector<PartitionSet> sets;
  const double w = (1.0 - delta) / (n - 1);
  for (int i = 0; i < n - 1; ++i) {
    Vector lo(2), hi(2);
    lo << delta + w * i, delta;
    hi << (i == n - 2 ? 1.0 : delta + w * (i + 1)), 1.0;
    sets.emplace_back(AxisRegion{AxisBox::make(lo, hi)});
  }
  Vector a_lo(2), a_hi(2), b_lo(2), b_hi(2);
  a_lo << 0.0, 0.0;
  a_hi << delta, 1.0;
  b_lo << delta, 0.0;
  b_hi << 1.0, delta;
  sets.emplace_back(BoxUnion{{AxisBox::make(a_lo, a_hi), AxisBox::make(b_lo, b_hi)}});
  return Partition(Family::custom, 2, std::move(sets));
}

int perfect_root(int n, int dim) {
  if (n < 1 || dim < 1) throw std::invalid_argument("perfect_root: need n, dim >= 1");
  int m = static_cast<int>(std::lround(std::pow(static_cast<double>(n), 1.0 / dim)));
  for (int c : {m - 1, m, m + 1}) {
    if (c < 1) continue;
    long long p = 1;
    for (int k = 0; k < dim; ++k) p *= c;
    if (p == n) return c;
  }
  throw std::invalid_argument("jittered: n = " + std::to_string(n) + " is not a perfect " +
                              std::to_string(dim) + "-th power");
}

Partition build_partition(const PartitionSpec& spec) {
  switch (spec.family) {
    case Family::diag:
      if (spec.dim != 2) throw std::invalid_argument("diag partitions are defined on the unit square only");
      if (spec.v.size() + 1 != static_cast<size_t>(spec.n)) {
        throw std::invalid_argument("diag: expected n-1 cut values");
      }
      return diag_partition(spec.v);
    case Family::equivolume_diag:
      if (spec.dim != 2) throw std::invalid_argument("diag partitions are defined on the unit square only");
      return equivolume_diag_partition(spec.n);
    case Family::equidistant_diag:
      if (spec.dim != 2) throw std::invalid_argument("diag partitions are defined on the unit square only");
      return equidistant_diag_partition(spec.n);
    case Family::vertical:
      return vertical_partition(spec.n, spec.dim);
    case Family::jittered:
      return jittered_partition(perfect_root(spec.n, spec.dim), spec.dim);
    case Family::custom:
      break;
  }
  throw std::invalid_argument("custom partitions cannot be built from a spec");
}

PartitionReport validate_partition(const Partition& p) {
  PartitionReport r;
  r.measures = p.measures();
  r.measure_sum = r.measures.sum();
  r.measure_ok = std::abs(r.measure_sum - 1.0) <= kMeasureTol;
  r.equivolume = (r.measures.array() - 1.0 / p.size()).abs().maxCoeff() < kMeasureTol;
  return r;
}

SuccessProfile success_profile(const Partition& p, const Vector& anchor) {
  if (anchor.size() != p.dim()) throw std::invalid_argument("success_profile: anchor dimension mismatch");
  if (!in_unit_cube(anchor, 0.0)) throw std::domain_error("success_profile: anchor outside [0,1]^d");
  SuccessProfile s{Vector(p.size()), anchor};
  p.success_profile(anchor, s.q);
  return s;
}

double bias_at(const Partition& p, const Vector& anchor) {
  auto s = success_profile(p, anchor);
  return s.q.mean() - anchored_volume(anchor);
}

}  // namespace strata
