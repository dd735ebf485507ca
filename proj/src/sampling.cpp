#include "strata/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strata {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Area below the line x+y = s inside the unit square, and its inverse.
double level_cdf(double s) { return detail::clipped_triangle_area(s, 1.0, 1.0); }

double level_quantile(double a) {
  a = std::clamp(a, 0.0, 1.0);
  return a <= 0.5 ? std::sqrt(2.0 * a) : 2.0 - std::sqrt(2.0 * (1.0 - a));
}

Vector uniform_in_box(const Vector& lo, const Vector& hi, CounterRng& rng) {
  Vector x(lo.size());
  for (Eigen::Index k = 0; k < lo.size(); ++k) x[k] = lo[k] + (hi[k] - lo[k]) * rng.uniform();
  return x;
}

Vector sample_slice(const DiagonalSlice& d, CounterRng& rng, SliceMethod method) {
  const double lo = d.v_lo * kSqrt2, hi = std::min(d.v_hi * kSqrt2, 2.0);
  Vector x(2);
  if (method == SliceMethod::inverse_cdf) {
    const double a_lo = level_cdf(lo), a_hi = level_cdf(hi);
    double s = level_quantile(a_lo + (a_hi - a_lo) * rng.uniform());
    s = std::clamp(s, lo, hi);
    // given the level, the position along the segment is uniform
    const double x_lo = std::max(0.0, s - 1.0), x_hi = std::min(1.0, s);
    x[0] = x_lo + (x_hi - x_lo) * rng.uniform();
    x[1] = std::clamp(s - x[0], 0.0, 1.0);
    return x;
  }
  const double b_lo = std::max(0.0, lo - 1.0), b_hi = std::min(1.0, hi);
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    x[0] = b_lo + (b_hi - b_lo) * rng.uniform();
    x[1] = b_lo + (b_hi - b_lo) * rng.uniform();
    const double s = x[0] + x[1];
    if (s >= lo && s <= hi) return x;
  }
  throw std::runtime_error("sample_in_set: rejection cap exceeded for " + set_describe(d));
}

}  // namespace

PointSet::PointSet(PointMatrix pts, Provenance prov) : points(std::move(pts)), provenance(std::move(prov)) {
  if (points.rows() < 1 || points.cols() < 1) throw std::invalid_argument("PointSet: need N >= 1 and d >= 1");
  if ((points.array() < 0.0).any() || (points.array() > 1.0).any()) {
    throw std::invalid_argument("PointSet: coordinates must lie in [0,1]");
  }
}

PointSet sample_mc(int n, int dim, const SeedSpec& seed) {
  if (n < 1 || dim < 1) throw std::invalid_argument("sample_mc: need n >= 1 and dim >= 1");
  PointMatrix pts(n, dim);
  for (int i = 0; i < n; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    for (int k = 0; k < dim; ++k) pts(i, k) = rng.uniform();
  }
  return PointSet(std::move(pts), Provenance{"mc", seed.master, seed.replicate});
}

Vector sample_in_set(const PartitionSet& s, CounterRng& rng, SliceMethod method) {
  return std::visit(
      overloaded{
          [&](const VerticalStrip& v) {
            Vector x(v.dim);
            x[0] = (v.index + rng.uniform()) / v.count;
            for (int k = 1; k < v.dim; ++k) x[k] = rng.uniform();
            return x;
          },
          [&](const DiagonalSlice& d) { return sample_slice(d, rng, method); },
          [&](const GridCell& c) {
            Vector x(static_cast<Eigen::Index>(c.cell.size()));
            for (size_t k = 0; k < c.cell.size(); ++k) {
              x[static_cast<Eigen::Index>(k)] = (c.cell[k] + rng.uniform()) / c.m;
            }
            return x;
          },
          [&](const AxisRegion& r) { return uniform_in_box(r.box.lo, r.box.hi, rng); },
          [&](const BoxUnion& u) {
            double total = 0.0;
            for (const auto& b : u.boxes) total += b.volume();
            double pick = rng.uniform() * total;
            for (const auto& b : u.boxes) {
              if (pick < b.volume()) return uniform_in_box(b.lo, b.hi, rng);
              pick -= b.volume();
            }
            return uniform_in_box(u.boxes.back().lo, u.boxes.back().hi, rng);
          },
      },
      s);
}

PointSet sample_stratified(const Partition& p, const SeedSpec& seed, SliceMethod method) {
  PointMatrix pts(p.size(), p.dim());
  for (int i = 0; i < p.size(); ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    pts.row(i) = sample_in_set(p[i], rng, method).transpose();
  }
  return PointSet(std::move(pts), Provenance{to_string(p.family()), seed.master, seed.replicate});
}

}  // namespace strata
