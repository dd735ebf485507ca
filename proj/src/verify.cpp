#include "strata/verify.hpp"

#include "strata/closed_forms.hpp"
#include "strata/discrepancy.hpp"
#include "strata/expectation.hpp"
#include "strata/geometry.hpp"
#include "strata/io.hpp"
#include "strata/sampling.hpp"
#include "strata/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace strata {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

constexpr int kGrid = 512;

struct Ctx {
  VerifyReport& rep;
  std::string suite;
  CounterRng rng;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back({suite, name, ok, detail});
  }
  void near(const std::string& name, double got, double want, double tol) {
    std::ostringstream os;
    os << "got " << format_double(got) << ", want " << format_double(want) << " +- " << tol;
    check(name, std::abs(got - want) <= tol, os.str());
  }
  Vector point(int d) {
    Vector x(d);
    for (int k = 0; k < d; ++k) x[k] = rng.uniform();
    return x;
  }
  AxisBox box(int d) {
    Vector a = point(d), b = point(d);
    return AxisBox::make(a.cwiseMin(b), a.cwiseMax(b));
  }
};

std::vector<std::pair<std::string, Partition>> equivolume_zoo() {
  std::vector<std::pair<std::string, Partition>> z;
  for (int n : {2, 5, 10}) z.emplace_back("vertical(" + std::to_string(n) + ")", vertical_partition(n, 2));
  for (int m : {2, 3}) z.emplace_back("jittered(m=" + std::to_string(m) + ")", jittered_partition(m, 2));
  for (int n : {2, 3, 6}) z.emplace_back("equivolume_diag(" + std::to_string(n) + ")", equivolume_diag_partition(n));
  return z;
}

void suite_geometry(Ctx& c) {
  c.near("halfplane c=0", halfplane_box_area(0.0, 1.0, 1.0), 0.0, 0.0);
  c.near("halfplane c=2", halfplane_box_area(2.0, 1.0, 1.0), 1.0, 1e-15);
  c.near("halfplane c=1", halfplane_box_area(1.0, 1.0, 1.0), 0.5, 1e-15);
  c.near("halfplane c=0.5", halfplane_box_area(0.5, 1.0, 1.0), 0.125, 1e-15);

  const double cuts[] = {0.5, 1.1};
  const Partition d = diag_partition(cuts);
  c.near("diag(0.5,1.1) measure 1", d.measures()[0], 0.25, 1e-12);
  const double tail = (2.0 - 1.1 * kSqrt2) * (2.0 - 1.1 * kSqrt2) / 2.0;  // corner beyond s + t = 1.1 sqrt 2
  c.near("diag(0.5,1.1) measure 2", d.measures()[1], 0.75 - tail, 1e-12);
  c.near("diag(0.5,1.1) measure 3", d.measures()[2], tail, 1e-12);
  c.check("diag(0.5,1.1) not equivolume", !validate_partition(d).equivolume);

  std::vector<std::pair<std::string, Partition>> all = equivolume_zoo();
  all.emplace_back("equidistant_diag(5)", equidistant_diag_partition(5));
  all.emplace_back("diag(0.5,1.1)", d);
  all.emplace_back("vertical(4,d=3)", vertical_partition(4, 3));
  all.emplace_back("corner_heavy(6)", corner_heavy_partition(6, 0.9));
  for (const auto& [name, p] : all) {
    const auto r = validate_partition(p);
    c.check(name + " measures sum to 1", r.measure_ok, format_double(r.measure_sum));
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const AxisBox b = c.box(p.dim());
      double s = 0.0;
      for (int i = 0; i < p.size(); ++i) s += set_box_intersection(p[i], b);
      worst = std::max(worst, std::abs(s - b.volume()));
    }
    c.check(name + " intersections sum to box volume", worst <= 1e-12, format_double(worst));
  }
  for (const auto& [name, p] : equivolume_zoo()) {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) worst = std::max(worst, std::abs(bias_at(p, c.point(2))));
    c.check(name + " unbiased", worst <= 1e-12, format_double(worst));
  }
  double biggest = 0.0;
  for (int t = 0; t < 200; ++t) biggest = std::max(biggest, std::abs(bias_at(d, c.point(2))));
  c.check("diag(0.5,1.1) biased somewhere", biggest > 1e-3, format_double(biggest));

  bool monotone = true;
  for (int t = 0; t < 200 && monotone; ++t) {
    Vector x = c.point(2), y = x;
    y[t % 2] = x[t % 2] + (1.0 - x[t % 2]) * c.rng.uniform();
    const auto qx = success_profile(d, x).q, qy = success_profile(d, y).q;
    monotone = (qy.array() >= qx.array() - 1e-12).all() && (qx.array() >= -1e-12).all() &&
               (qy.array() <= 1.0 + 1e-12).all();
  }
  c.check("success profile in [0,1] and monotone", monotone);
}

void suite_sampling(Ctx& c) {
  std::vector<std::pair<std::string, Partition>> fams = equivolume_zoo();
  const double cuts[] = {0.5, 1.1};
  fams.emplace_back("diag(0.5,1.1)", diag_partition(cuts));
  fams.emplace_back("corner_heavy(5)", corner_heavy_partition(5, 0.9));
  for (const auto& [name, p] : fams) {
    bool ok = true;
    for (std::uint64_t r = 0; r < 100 && ok; ++r) {
      const PointSet ps = sample_stratified(p, SeedSpec{c.rng(), Purpose::test, r});
      for (int i = 0; i < p.size() && ok; ++i) ok = set_contains(p[i], ps.points.row(i).transpose());
    }
    c.check(name + " membership", ok);
  }
  const SeedSpec s{42, Purpose::monte_carlo, 0};
  c.check("mc determinism", sample_mc(5, 2, s).points == sample_mc(5, 2, s).points);
  const PointSet big = sample_mc(10000, 2, s);
  const double mean = big.points.col(0).mean();
  c.near("mc coordinate mean", mean, 0.5, 3.0 / std::sqrt(12.0) / 100.0);
}

void suite_discrepancy(Ctx& c) {
  PointMatrix one(1, 1);
  one << 1.0;
  c.near("warnock d=1 {1}", l2_warnock(PointSet(one)).value, 1.0 / 3.0, 1e-15);
  PointMatrix corner(1, 2);
  corner << 1.0, 1.0;
  c.near("warnock d=2 {(1,1)}", l2_warnock(PointSet(corner)).value, 1.0 / 9.0, 1e-15);
  PointMatrix mid(1, 2);
  mid << 0.5, 0.5;
  c.near("star {(0.5,0.5)}", star_disc_exact_2d(PointSet(mid)).value, 0.75, 1e-15);
  PointMatrix origin = PointMatrix::Zero(1, 2);
  c.near("star {(0,0)}", star_disc_exact_2d(PointSet(origin)).value, 1.0, 1e-15);

  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const PointSet ps = sample_mc(8 + 5 * t, 2, SeedSpec{c.rng(), Purpose::test, 0});
    worst = std::max(worst, std::abs(l2_warnock(ps).value - lp_quadrature(ps, 2.0, 1024).value));
  }
  c.check("warnock vs quadrature", worst < 1e-4, format_double(worst));

  bool dominated = true;
  for (int t = 0; t < 5; ++t) {
    const PointSet ps = sample_mc(200, 2, SeedSpec{c.rng(), Purpose::test, 0});
    const double exact = star_disc_exact_2d(ps).value;
    StarGridOptions o;
    o.resolution = 256;
    o.augment = Augment::never;
    const double grid = star_disc_grid(ps, o).value;
    dominated = dominated && grid <= exact && exact - grid < 4.0 / 256 && exact >= std::sqrt(l2_warnock(ps).value);
  }
  c.check("grid <= exact <= grid + 4/G, D* >= L2", dominated);
}

void suite_expectation(Ctx& c) {
  c.near("equivolume_diag(2)", expected_lp_midpoint(equivolume_diag_partition(2), 2.0, kGrid), 0.05, 5e-5);
  const double a3 = std::sqrt(2.0 / 3.0);
  c.near("equivolume_diag(3) vs closed form", expected_lp_midpoint(equivolume_diag_partition(3), 2.0, kGrid),
         closed::n3_case2(a3, 1.0 - a3), 1e-4);
  c.near("jittered(2)", expected_lp_midpoint(jittered_partition(2, 2), 2.0, kGrid), 0.01909, 5e-5);
  c.near("vertical(2, d=1)", expected_lp_midpoint(vertical_partition(2, 1), 2.0, 4096), 1.0 / 24.0, 1e-6);
  const double a = 0.122034;
  const double v[] = {(a + 1.0) / kSqrt2};
  c.near("n2_diag vs quadrature", expected_lp_midpoint(diag_partition(v), 2.0, kGrid), closed::n2_diag(a), 1e-4);

  double worst = 0.0;
  for (const auto& [name, p] : equivolume_zoo()) {
    if (p.size() > 6) continue;
    for (int t = 0; t < 200; ++t) {
      const Vector x = c.point(2);
      Vector scratch;
      const auto q = success_profile(p, x).q;
      worst = std::max(worst, std::abs(fourth_moment_equivolume(q) - expected_pointwise(p, x, 4.0)));
    }
  }
  c.check("fourth moment formula vs pmf", worst <= 1e-12, format_double(worst));
}

void suite_partition_principle(Ctx& c) {
  for (const auto& [name, p] : equivolume_zoo()) {
    for (double pp : {2.0, 4.0}) {
      const double value = expected_lp_midpoint(p, pp, kGrid);
      const double baseline =
          pp == 2.0 ? closed::mc<double>(p.size(), 2) : expected_lp_binomial(p.size(), 2, pp, kGrid);
      std::ostringstream os;
      os << format_double(value) << " < " << format_double(baseline);
      c.check(name + " p=" + format_double(pp) + " beats mc", value < baseline, os.str());
      double worst = 0.0;
      for (int t = 0; t < 200; ++t) worst = std::min(worst, hoeffding_gap(p, c.point(2), pp));
      c.check(name + " p=" + format_double(pp) + " hoeffding gap", worst >= -1e-12, format_double(worst));
    }
  }
}

void suite_factor2(Ctx& c) {
  std::ostringstream os;
  os << "n,mc,equivolume_diag,ratio\n";
  bool ok = true;
  for (int n : {50, 100, 150, 200, 256, 300, 350, 400, 450}) {
    const double mc = closed::mc<double>(n, 2);
    const double e = expected_lp_midpoint(equivolume_diag_partition(n), 2.0, kGrid);
    os << n << ',' << format_double(mc) << ',' << format_double(e) << ',' << format_double(mc / e) << '\n';
    if (n >= 200) ok = ok && mc / e >= 1.9 && mc / e <= 2.1;
  }
  c.rep.notes.push_back(os.str());
  c.check("ratio in [1.9, 2.1] for N >= 200", ok);
}

void suite_uniformity(Ctx& c) {
  double worst = 0.0;
  bool sandwich = true;
  for (const auto& [name, p] : equivolume_zoo()) {
    for (int t = 0; t < 200; ++t) {
      const AxisBox b = c.box(2);
      worst = std::max(worst, std::abs(a_n_statistic(p, b) - b.volume()));
      const auto k = index_counts(p, b);
      const double n = p.size();
      sandwich = sandwich && k.inside / n <= b.volume() + 1e-12 && b.volume() <= (k.inside + k.touching) / n + 1e-12;
    }
  }
  c.check("a_N = |b| for equivolume partitions", worst <= 1e-12, format_double(worst));
  c.check("I_B/N <= |b| <= (I_B+T_B)/N", sandwich);

  bool strips = true;
  for (int n : {2, 8, 64, 256}) {
    const Partition p = vertical_partition(n, 2);
    for (int t = 0; t < 20; ++t) {
      AxisBox b = c.box(2);
      b.hi[1] = std::min(b.hi[1], 0.999);
      b.lo[1] = std::min(b.lo[1], b.hi[1]);
      strips = strips && index_counts(p, b).inside == 0;
    }
  }
  c.check("vertical strips never inside a sub-height box", strips);

  Vector lo = Vector::Zero(2), hi = Vector::Constant(2, 0.5);
  const auto k = index_counts(jittered_partition(4, 2), AxisBox::make(lo, hi));
  c.check("jittered(4) in [0,1/2)^2: I=4, T=0", k.inside == 4 && k.touching == 0);
  c.near("jittered(5) average diameter", avg_diameter(jittered_partition(5, 2)), kSqrt2 / 5, 1e-12);
  c.near("vertical(4) average diameter", avg_diameter(vertical_partition(4, 2)), std::sqrt(1.0 + 1.0 / 16), 1e-12);
}

const std::map<std::string, std::function<void(Ctx&)>>& registry() {
  static const std::map<std::string, std::function<void(Ctx&)>> r{
      {"geometry", suite_geometry},
      {"sampling", suite_sampling},
      {"discrepancy", suite_discrepancy},
      {"expectation", suite_expectation},
      {"partition-principle", suite_partition_principle},
      {"conjecture-factor2", suite_factor2},
      {"uniformity", suite_uniformity},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"geometry",           "sampling",   "discrepancy", "expectation",
                                              "partition-principle", "conjecture-factor2", "uniformity"};
  return names;
}

VerifyReport verify(const std::string& suite, std::uint64_t seed) {
  VerifyReport rep;
  std::vector<std::string> run;
  if (suite == "all") {
    run = verify_suites();
  } else if (registry().count(suite)) {
    run = {suite};
  } else {
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  }
  const auto& names = verify_suites();
  for (const auto& name : run) {
    const auto lane = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
    Ctx c{rep, name, CounterRng(SeedSpec{seed, Purpose::test, 0}, lane)};
    registry().at(name)(c);
  }
  return rep;
}

}  // namespace strata
