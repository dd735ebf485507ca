#include "strata/geometry.hpp"
#include "strata/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace strata;

namespace {

std::vector<Partition> families() {
  const double cuts[] = {0.5, 1.1};
  return {vertical_partition(3, 2),     jittered_partition(5, 2),  equivolume_diag_partition(7),
          equidistant_diag_partition(4), diag_partition(cuts),      jittered_partition(2, 3),
          vertical_partition(4, 3),      corner_heavy_partition(4, 0.9)};
}

bool in_anchored(const Eigen::Ref<const Vector>& pt, const Vector& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (!(pt[k] < x[k])) return false;
  return true;
}

}  // namespace

TEST_CASE("monte carlo samples are deterministic") {
  const SeedSpec s{42, Purpose::monte_carlo, 0};
  const auto a = sample_mc(1, 2, s), b = sample_mc(1, 2, s);
  CHECK(a.points == b.points);
  const auto c = sample_mc(1, 2, SeedSpec{42, Purpose::monte_carlo, 1});
  CHECK(a.points != c.points);
  CHECK(sample_mc(1, 2, SeedSpec{42, Purpose::stratified, 0}).points != a.points);
}

TEST_CASE("monte carlo moments") {
  const auto ps = sample_mc(10000, 2, SeedSpec{7, Purpose::monte_carlo, 0});
  REQUIRE(ps.size() == 10000);
  for (int k = 0; k < 2; ++k) CHECK(std::abs(ps.points.col(k).mean() - 0.5) <= 3.0 / std::sqrt(12.0) / 100.0);
  int inside = 0;
  for (int i = 0; i < ps.size(); ++i) inside += ps.points(i, 0) < 0.5 && ps.points(i, 1) < 0.5;
  CHECK(std::abs(inside / 1e4 - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / 1e4));
  CHECK((ps.points.array() >= 0.0).all());
  CHECK((ps.points.array() < 1.0).all());
}

TEST_CASE("triangle draws") {
  for (SliceMethod m : {SliceMethod::inverse_cdf, SliceMethod::rejection}) {
    CounterRng rng(SeedSpec{1, Purpose::test, static_cast<std::uint64_t>(m)});
    const PartitionSet tri = DiagonalSlice{0.0, 1.0 / kSqrt2};
    double sum = 0.0;
    bool all_in = true;
    for (int i = 0; i < 10000; ++i) {
      const Vector x = sample_in_set(tri, rng, m);
      all_in = all_in && x[0] + x[1] <= 1.0 && (x.array() >= 0.0).all();
      sum += x[0] + x[1];
    }
    CHECK(all_in);
    // s + t on the triangle has density 2u on [0,1]: mean 2/3, variance 1/18
    CHECK(std::abs(sum / 1e4 - 2.0 / 3.0) <= 3.0 * std::sqrt(1.0 / 18.0) / 100.0);
  }
}

TEST_CASE("cell and box draws") {
  CounterRng rng(SeedSpec{2, Purpose::test, 0});
  for (int i = 0; i < 1000; ++i) {
    const Vector x = sample_in_set(GridCell{{1, 1}, 2}, rng);
    CHECK((x.array() >= 0.5).all());
    CHECK((x.array() <= 1.0).all());
  }
  const PartitionSet whole = AxisRegion{AxisBox::unit(3)};
  const Vector y = sample_in_set(whole, rng);
  CHECK(y.size() == 3);
}

TEST_CASE("stratified membership") {
  for (const auto& p : families()) {
    for (std::uint64_t r = 0; r < 100; ++r) {
      const auto ps = sample_stratified(p, SeedSpec{9, Purpose::stratified, r}, r % 2 ? SliceMethod::rejection
                                                                                   : SliceMethod::inverse_cdf);
      REQUIRE(ps.size() == p.size());
      for (int i = 0; i < p.size(); ++i) CHECK(set_contains(p[i], ps.points.row(i).transpose()));
    }
  }
}

TEST_CASE("stratified examples") {
  const auto v = sample_stratified(vertical_partition(3, 2), SeedSpec{1});
  for (int i = 0; i < 3; ++i) {
    CHECK(v.points(i, 0) >= i / 3.0);
    CHECK(v.points(i, 0) <= (i + 1) / 3.0);
  }
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto e = sample_stratified(equivolume_diag_partition(2), SeedSpec{1, Purpose::stratified, r});
    const int below = (e.points(0, 0) + e.points(0, 1) <= 1.0) + (e.points(1, 0) + e.points(1, 1) <= 1.0);
    CHECK(below == 1);
  }
  // one point per cell of the 5 x 5 grid
  const auto j = sample_stratified(jittered_partition(5, 2), SeedSpec{3});
  std::vector<int> hits(25, 0);
  for (int i = 0; i < 25; ++i) ++hits[static_cast<int>(j.points(i, 0) * 5) * 5 + static_cast<int>(j.points(i, 1) * 5)];
  for (int h : hits) CHECK(h == 1);
  CHECK(sample_stratified(jittered_partition(5, 2), SeedSpec{3}).points == j.points);
}

TEST_CASE("stratified counts are unbiased with the right per-stratum rates") {
  const auto p = equivolume_diag_partition(5);
  const int m = 100000;
  std::vector<Vector> anchors;
  for (int a = 0; a < 20; ++a) {
    Vector x(2);
    x << 0.05 + 0.9 * ((a * 7) % 20) / 19.0, 0.05 + 0.9 * a / 19.0;
    anchors.push_back(x);
  }
  std::vector<double> z(anchors.size(), 0.0), z2(anchors.size(), 0.0);
  std::vector<Eigen::VectorXd> hits(anchors.size(), Eigen::VectorXd::Zero(p.size()));
  for (int r = 0; r < m; ++r) {
    const auto ps = sample_stratified(p, SeedSpec{17, Purpose::stratified, static_cast<std::uint64_t>(r)});
    for (size_t a = 0; a < anchors.size(); ++a) {
      int c = 0;
      for (int i = 0; i < p.size(); ++i) {
        const bool in = in_anchored(ps.points.row(i).transpose(), anchors[a]);
        c += in;
        hits[a][i] += in;
      }
      const double zz = static_cast<double>(c) / p.size();
      z[a] += zz;
      z2[a] += zz * zz;
    }
  }
  for (size_t a = 0; a < anchors.size(); ++a) {
    const double mean = z[a] / m, var = z2[a] / m - mean * mean;
    const double vol = anchors[a][0] * anchors[a][1];
    CHECK(std::abs(mean - vol) <= 4.0 * std::sqrt(var / m) + 1e-12);
    const auto q = success_profile(p, anchors[a]).q;
    for (int i = 0; i < p.size(); ++i) {
      const double f = hits[a][i] / m;
      CHECK(std::abs(f - q[i]) <= 4.0 * std::sqrt(q[i] * (1.0 - q[i]) / m) + 1e-12);
    }
  }
}

TEST_CASE("degenerate strata are rejected") {
  CounterRng rng(SeedSpec{});
  const PartitionSet empty = DiagonalSlice{0.5, 0.5};
  CHECK_THROWS(sample_in_set(empty, rng, SliceMethod::rejection));
}
