#include "strata/geometry.hpp"
#include "strata/sampling.hpp"
#include "strata/uniformity.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace strata;

namespace {

struct Lcg {
  unsigned long long s;
  double operator()() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
};

AxisBox random_box(Lcg& rng, int d) {
  Vector a(d), b(d);
  for (int k = 0; k < d; ++k) {
    a[k] = rng();
    b[k] = rng();
  }
  return AxisBox::make(a.cwiseMin(b), a.cwiseMax(b));
}

AxisBox box2(double x0, double y0, double x1, double y1) {
  Vector lo(2), hi(2);
  lo << x0, y0;
  hi << x1, y1;
  return AxisBox::make(lo, hi);
}

}  // namespace

TEST_CASE("a_N equals the box volume for equivolume partitions") {
  Lcg rng{21};
  const std::vector<Partition> parts{vertical_partition(9, 2), jittered_partition(4, 2), equivolume_diag_partition(11),
                                     vertical_partition(5, 3), jittered_partition(3, 3)};
  for (const auto& p : parts) {
    for (int t = 0; t < 1000; ++t) {
      const auto b = random_box(rng, p.dim());
      CHECK(std::abs(a_n_statistic(p, b) - b.volume()) <= 1e-12);
      const auto c = index_counts(p, b);
      const double n = p.size();
      CHECK(c.inside / n <= b.volume() + 1e-12);
      CHECK(b.volume() <= (c.inside + c.touching) / n + 1e-12);
    }
  }
  const auto one = vertical_partition(1, 2);
  CHECK(a_n_statistic(one, box2(0.1, 0.2, 0.6, 0.9)) == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("a_N away from equivolume") {
  const auto p = equidistant_diag_partition(4);
  const auto b = box2(0, 0, 0.5, 0.5);
  // slices below s + t = 1/2 and 1: areas 1/8, 3/8, 3/8, 1/8; the box holds 1/8 and 1/8
  const double expected = (0.125 / 0.125 + 0.125 / 0.375) / 4.0;
  CHECK(a_n_statistic(p, b) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(a_n_statistic(p, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(std::abs(a_n_statistic(p, b) - b.volume()) > 0.05);
}

TEST_CASE("index counts") {
  for (const auto& p : {vertical_partition(6, 2), jittered_partition(3, 2), equivolume_diag_partition(5)}) {
    const auto c = index_counts(p, AxisBox::unit(2));
    CHECK(c.inside == p.size());
    CHECK(c.touching == 0);
  }
  const auto j = index_counts(jittered_partition(4, 2), box2(0, 0, 0.5, 0.5));
  CHECK(j.inside == 4);
  CHECK(j.touching == 0);
  for (int n : {2, 7, 64, 256}) {
    const auto v = index_counts(vertical_partition(n, 2), box2(0, 0, 1, 0.999));
    CHECK(v.inside == 0);
    CHECK(v.touching == n);
  }
}

TEST_CASE("average diameters") {
  for (int m : {1, 2, 5, 9}) CHECK(avg_diameter(jittered_partition(m, 2)) == doctest::Approx(kSqrt2 / m));
  for (int n : {1, 4, 100}) {
    const double v = avg_diameter(vertical_partition(n, 2));
    CHECK(v == doctest::Approx(std::sqrt(1.0 + 1.0 / (double(n) * n))));
    CHECK(v >= 1.0);
  }
  // equivolume slices: the two corner triangles are small, the middle bands are not
  CHECK(avg_diameter(equivolume_diag_partition(6)) > 1.0);
  CHECK(avg_diameter(equivolume_diag_partition(64)) < avg_diameter(equivolume_diag_partition(2)));
}

TEST_CASE("sweeps") {
  Lcg rng{5};
  std::vector<AxisBox> boxes;
  for (int k = 0; k < 10; ++k) boxes.push_back(random_box(rng, 2));
  const auto vert = uniformity_sweep(Family::vertical, boxes, {1, 2, 16, 100, 256});
  CHECK(vert.rows.size() == 50);
  for (const auto& row : vert.rows) {
    CHECK(row.a_n == doctest::Approx(row.box_volume).epsilon(1e-12).scale(1e-12));
    CHECK(row.inside_fraction >= 0.0);
    CHECK(row.inside_fraction <= 1.0);
  }

  const std::vector<AxisBox> dyadic{box2(0, 0, 0.5, 0.5), box2(0.25, 0.5, 0.75, 1.0)};
  std::vector<int> ns;
  for (int m = 2; m <= 16; ++m) ns.push_back(m * m);
  ns.push_back(10);
  const auto jit = uniformity_sweep(Family::jittered, dyadic, ns);
  REQUIRE(jit.skipped == std::vector<int>{10});
  for (const auto& row : jit.rows) {
    const int m = static_cast<int>(std::lround(std::sqrt(row.n)));
    if (m % 4 == 0) CHECK(row.inside_fraction == doctest::Approx(row.box_volume));
    CHECK(row.inside_fraction <= row.box_volume + 1e-12);
  }
  const auto& last = jit.rows[jit.rows.size() - 2];
  CHECK(last.n == 256);
  CHECK(std::abs(last.inside_fraction - last.box_volume) < 1e-12);

  const auto eqd = uniformity_sweep(Family::equidistant_diag, dyadic, {2, 4, 8, 16, 32, 64});
  CHECK(eqd.rows.size() == 12);
  CHECK_THROWS(uniformity_sweep(Family::diag, dyadic, {4}));
}

TEST_CASE("sampled points fill a box in proportion to its volume") {
  const auto p = equivolume_diag_partition(8);
  const auto b = box2(0.2, 0.1, 0.7, 0.8);
  const int m = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < m; ++r) {
    const auto ps = sample_stratified(p, SeedSpec{31, Purpose::stratified, static_cast<std::uint64_t>(r)});
    int in = 0;
    for (int i = 0; i < ps.size(); ++i) {
      const double x = ps.points(i, 0), y = ps.points(i, 1);
      in += x >= 0.2 && x < 0.7 && y >= 0.1 && y < 0.8;
    }
    const double f = static_cast<double>(in) / ps.size();
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / m, se = std::sqrt((sum2 / m - mean * mean) / m);
  CHECK(std::abs(mean - b.volume()) <= 4.0 * se);
}
