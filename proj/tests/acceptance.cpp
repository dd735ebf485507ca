// Acceptance gate: one PASS/FAIL line per criterion, sub-checks indented
// below it.  A sub-check marked "known" is a reproducible disagreement with a
// printed value that is written up in the README; those still print FAIL but
// do not change the exit status.  Any other failing sub-check does.

#include "strata/closed_forms.hpp"
#include "strata/discrepancy.hpp"
#include "strata/expectation.hpp"
#include "strata/geometry.hpp"
#include "strata/optimize.hpp"
#include "strata/rng.hpp"
#include "strata/sampling.hpp"
#include "strata/tables.hpp"
#include "strata/uniformity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

using namespace strata;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Sub {
  std::string name;
  bool passed;
  std::string detail;
  bool known = false;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Sub> subs;

  void check(std::string name, bool ok, std::string detail = {}, bool known = false) {
    subs.push_back({std::move(name), ok, std::move(detail), known && !ok});
  }
  bool passed() const {
    for (const auto& s : subs)
      if (!s.passed) return false;
    return true;
  }
  bool undocumented_failure() const {
    for (const auto& s : subs)
      if (!s.passed && !s.known) return true;
    return false;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string sig6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Vector point2(CounterRng& rng) {
  Vector x(2);
  x << rng.uniform(), rng.uniform();
  return x;
}

const std::vector<int> kTable1N{50, 100, 150, 200, 256, 300, 350, 400, 450};

// ---------------------------------------------------------------------------

void closed_forms(Criterion& c) {
  const char* mc_printed[] = {"0.00277778", "0.00138889", "0.000925926", "0.000694444", "0.000542535",
                              "0.000462963", "0.000396825", "0.000347222", "0.000308642"};
  const char* vert_printed[] = {"0.00168889", "0.000838889", "0.000558025", "0.000418056", "0.000326369",
                                "0.000278395", "0.000238549", "0.000208681", "0.00018546"};
  bool mc_exact = true, mc_cols = true, vert_rational = true, vert_cols = true;
  std::string first_bad;
  for (size_t k = 0; k < kTable1N.size(); ++k) {
    const int n = kTable1N[k];
    const long double mc = closed::mc<long double>(n, 2), want = 5.0L / (36.0L * n);
    mc_exact = mc_exact && std::abs(mc - want) <= 4 * std::numeric_limits<long double>::epsilon() * want;
    mc_cols = mc_cols && sig6(static_cast<double>(mc)) == mc_printed[k];
    const long double v = closed::vertical<long double>(n, 2), vr = (3.0L * n + 2) / (36.0L * n * n);
    vert_rational = vert_rational && std::abs(v - vr) <= 4 * std::numeric_limits<long double>::epsilon() * vr;
    const bool col = sig6(static_cast<double>(v)) == vert_printed[k];
    if (!col && first_bad.empty()) first_bad = "N=" + std::to_string(n) + " gives " + sig6(double(v));
    vert_cols = vert_cols && col;
  }
  c.check("mc(N,2) = 5/(36N) for all nine N", mc_exact);
  c.check("mc column equals the printed digits", mc_cols);
  c.check("vertical(N,2) = (3N+2)/(36N^2)", vert_rational);
  c.check("vertical column equals the printed 6 significant digits", vert_cols, first_bad);
}

void lemma_values(Criterion& c) {
  struct Case {
    const char* name;
    Partition part;
    double want, tol;
  };
  const std::vector<Case> cases{{"equivolume_diag(2)", equivolume_diag_partition(2), 0.05, 1e-4},
                                {"equivolume_diag(3)", equivolume_diag_partition(3), 0.02901, 1e-4},
                                {"jittered m=2", jittered_partition(2, 2), 0.01909, 1e-4},
                                {"vertical N=2 d=1", vertical_partition(2, 1), 1.0 / 24, 1e-6}};
  for (const auto& k : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = expected_lp(k.part, 2.0, QuadratureOptions{1024});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.check(k.name, std::abs(r.value - k.want) <= k.tol && secs < 60.0,
            fmt("%.8f (target %.5f, %.2f s)", r.value, k.want, secs));
  }
}

void optimizer(Criterion& c) {
  OptimizeOptions o;
  o.seed = kSeed;
  const auto r2 = minimize_family(2, 2.0, o);
  c.check("N=2 argmin 0.793398 +- 1e-3", std::abs(r2.v[0] - 0.793398) <= 1e-3, fmt("v* = %.7f", r2.v[0]));
  c.check("N=2 value 0.04904 +- 1e-4", std::abs(r2.value - 0.04904) <= 1e-4, fmt("%.7f", r2.value));

  const auto r3 = minimize_family(3, 2.0, o);
  c.check("N=3 value 0.0268 +- 3e-4", std::abs(r3.value - 0.0268) <= 3e-4, fmt("%.7f", r3.value));
  const bool near = std::abs(r3.v[0] - 0.513) <= 5e-3 && std::abs(r3.v[1] - 1.125) <= 5e-3;
  c.check("N=3 argmin (0.513, 1.125) +- 5e-3", near,
          fmt("v* = (%.6f, %.6f); the geometry optimum corresponds to A = %.5f", r3.v[0], r3.v[1], kSqrt2 * r3.v[0]) +
              fmt(", B = %.5f", kSqrt2 * r3.v[1] - 1.0),
          true);

  // which N=3 rational describes the geometry
  const double a = kSqrt2 * r3.v[0], b = kSqrt2 * r3.v[1] - 1.0;
  const double geom = r3.value;
  const double main_at = closed::n3_main(a, b), app_at = closed::n3_appendix(a, b);
  c.check("rationals at the optimum", true,
          fmt("geometry %.7f, 12960-rational %.7f, 25920-rational %.7f", geom, main_at, app_at));
  const double main_min_cuts[] = {0.725501 / kSqrt2, 1.590843 / kSqrt2};
  const double app_min_cuts[] = {0.7512174 / kSqrt2, 1.513013 / kSqrt2};
  const double g_main = expected_lp(diag_partition(main_min_cuts), 2.0).value;
  const double g_app = expected_lp(diag_partition(app_min_cuts), 2.0).value;
  c.check("reported appendix minimum (A=0.7512174, B=0.513013, 0.0268044) matches the geometry",
          std::abs(g_app - 0.0268044) < 5e-6, fmt("geometry there %.7f", g_app));
  c.check("reported main-text minimum (A=0.725501, B=0.590843, 0.0267804) is not attained",
          g_main > 0.0267804 + 1e-4, fmt("geometry there %.7f", g_main));
  const double s = 0.7255;
  c.check("12960-rational touches the geometry on B = 2A-1",
          std::abs(closed::n3_main(s, 2 * s - 1) - closed::n3_case2(s, 2 * s - 1)) < 1e-10 &&
              std::abs(closed::n3_case2(s, 2 * s - 1) - 0.0269763) < 1e-6,
          fmt("%.7f at A = 0.7255", closed::n3_main(s, 2 * s - 1)));
}

void conjecture_n4(Criterion& c) {
  const double cuts[] = {kSqrt2 / 4 + 0.08, kSqrt2 / 2 + 0.11, 3 * kSqrt2 / 4 - 0.02};
  const double v = expected_lp(diag_partition(cuts), 2.0).value;
  c.check("value 0.0188 +- 2e-4", std::abs(v - 0.0188) <= 2e-4, fmt("%.7f", v));
  const double jit = expected_lp(jittered_partition(2, 2), 2.0).value;
  c.check("strictly below jittered m=2 (0.01909)", v < 0.01909 && v < jit, fmt("jittered %.7f", jit));
}

void partition_principle(Criterion& c) {
  struct Named {
    std::string name;
    Partition part;
  };
  std::vector<Named> parts{{"vertical N=2", vertical_partition(2, 2)},      {"vertical N=5", vertical_partition(5, 2)},
                           {"vertical N=10", vertical_partition(10, 2)},    {"jittered m=2", jittered_partition(2, 2)},
                           {"jittered m=3", jittered_partition(3, 2)},      {"equivolume_diag N=2", equivolume_diag_partition(2)},
                           {"equivolume_diag N=3", equivolume_diag_partition(3)},
                           {"equivolume_diag N=6", equivolume_diag_partition(6)}};
  CounterRng rng(SeedSpec{kSeed, Purpose::test, 5});
  for (const auto& [name, part] : parts) {
    const int n = part.size();
    const double e2 = expected_lp(part, 2.0, QuadratureOptions{512}).value, m2 = closed::mc<double>(n, 2);
    const double e4 = expected_lp(part, 4.0, QuadratureOptions{512}).value, m4 = expected_lp_binomial(n, 2, 4.0, 512);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const Vector x = point2(rng);
      worst = std::min({worst, hoeffding_gap(part, x, 2.0), hoeffding_gap(part, x, 4.0)});
    }
    c.check(name, e2 < m2 && e4 < m4 && worst >= -1e-12,
            fmt("p=2 %.3e < %.3e; ", e2, m2) + fmt("p=4 %.3e < %.3e; ", e4, m4) + fmt("min gap %.1e", worst));
  }
}

void table1(Criterion& c) {
  const double diag_printed[] = {0.00137637, 0.000699558, 0.000471159, 0.000356743, 0.000269319,
                                 0.000228231, 0.000201676, 0.000172704, 0.000159365};
  Table1Options o;
  o.seed = kSeed;
  const auto rows = reproduce_table1(o);
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const double z = std::abs(r.diag_mean - r.diag_expected) / r.diag_se;
    const double rel = std::abs(r.diag_mean / diag_printed[k] - 1.0);
    c.check("equivolume_diag N=" + std::to_string(r.n), z <= 4.0 && rel <= 0.10,
            fmt("mean %.6g, %.2f SE from quadrature, ", r.diag_mean, z) + fmt("%.1f%% from printed", 100 * rel));
    if (r.has_jittered) {
      const double jp = r.n == 100 ? 0.000163637 : r.n == 256 ? 0.0000403301 : 0.0000206345;
      const double jz = std::abs(r.jit_mean - r.jit_expected) / r.jit_se;
      const double jrel = std::abs(r.jit_mean / jp - 1.0);
      c.check("jittered N=" + std::to_string(r.n), jz <= 4.0 && jrel <= 0.10,
              fmt("mean %.6g, %.2f SE from quadrature, ", r.jit_mean, jz) + fmt("%.1f%% from printed", 100 * jrel));
    }
  }
}

void table2(Criterion& c) {
  struct Printed {
    int n;
    const char* family;
    double value;
  };
  const Printed printed[] = {{100, "mc", 0.1129},   {100, "vertical", 0.1016}, {100, "equivolume_diag", 0.0975},
                             {100, "jittered", 0.0616}, {1024, "mc", 0.0379}, {1024, "vertical", 0.0316},
                             {1024, "equivolume_diag", 0.0293}, {1024, "jittered", 0.0127}};
  Table2Options o;
  o.seed = kSeed;
  const auto rows = reproduce_table2(o);
  int approximate = 0, higher = 0;
  for (const auto& r : rows) {
    if (r.dim != 2) {
      higher += 1;
      approximate += r.method == "approximate (grid)";
      continue;
    }
    for (const auto& p : printed) {
      if (p.n != r.n || r.family != p.family) continue;
      c.check("d=2 N=" + std::to_string(r.n) + " " + r.family,
              std::abs(r.mean - p.value) <= 0.02 && r.grid_dominated && r.method == "exact",
              fmt("mean %.4f vs %.4f, grid <= exact on all runs", r.mean, p.value));
    }
  }
  c.check("d=3 and d=5 rows carry the approximate flag", higher > 0 && approximate == higher,
          std::to_string(approximate) + " of " + std::to_string(higher) + " rows");
}

void oracles(Criterion& c) {
  CounterRng rng(SeedSpec{kSeed, Purpose::test, 8});

  double warnock = 0.0;
  for (std::uint64_t r = 0; r < 50; ++r) {
    const int d = 1 + static_cast<int>(r % 3);
    const int n = 8 + static_cast<int>(rng() % 57);
    const auto ps = sample_mc(n, d, SeedSpec{kSeed, Purpose::test, 100 + r});
    const int g = d == 1 ? 1 << 16 : d == 2 ? 2048 : 320;
    warnock = std::max(warnock, std::abs(l2_warnock(ps).value - lp_quadrature(ps, 2.0, g).value));
  }
  c.check("Warnock vs direct quadrature, 50 random sets, d <= 3, 8 <= N <= 64", warnock < 1e-4, fmt("max diff %.2e", warnock));

  double pmf = 0.0;
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 6;
    Vector q(n);
    for (int i = 0; i < n; ++i) q[i] = rng.uniform();
    const auto got = pb_pmf(q).probabilities;
    Vector ref = Vector::Zero(n + 1);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double w = 1.0;
      int k = 0;
      for (int i = 0; i < n; ++i) {
        const bool hit = mask >> i & 1u;
        w *= hit ? q[i] : 1.0 - q[i];
        k += hit;
      }
      ref[k] += w;
    }
    pmf = std::max(pmf, (got - ref).cwiseAbs().maxCoeff());
  }
  c.check("Poisson-binomial vs enumeration, N <= 6", pmf < 1e-12, fmt("max diff %.2e", pmf));

  const double A = 0.8, B = 0.65;
  const double cuts[] = {A / kSqrt2, (B + 1.0) / kSqrt2};
  const auto part = diag_partition(cuts);
  for (int i = 1; i <= 6; ++i) {
    double printed = 0.0, derived = 0.0;
    for (int found = 0; found < 50;) {
      const double x = rng.uniform(), y = rng.uniform();
      if (y < x || !closed::appendix_region(i, x, y, A, B)) continue;
      Vector anchor(2);
      anchor << x, y;
      const double engine = expected_pointwise(part, anchor, 2.0);
      printed = std::max(printed, std::abs(closed::appendix_f(i, x, y, A, B) - engine));
      derived = std::max(derived, std::abs(closed::appendix_f_derived(i, x, y, A, B) - engine));
      ++found;
    }
    const bool rederived = i == 4 || i == 6;
    c.check("f" + std::to_string(i) + " as displayed vs engine", printed < 1e-10,
            fmt("max diff %.2e", printed) +
                (rederived ? fmt("; re-derived from its success probabilities: %.2e", derived) : std::string{}),
            rederived && derived < 1e-10);
  }

  double pixel = 0.0;
  const int g = 4096;
  for (int t = 0; t < 4; ++t) {
    const double cc = 2.0 * rng.uniform(), x = rng.uniform(), y = rng.uniform();
    long long count = 0;
    for (int a = 0; a < g; ++a) {
      const double s = (a + 0.5) / g;
      if (s > x) break;
      const double tmax = std::min(y, cc - s);
      if (tmax <= 0.0) continue;
      // pixel centres (b + 0.5)/g <= tmax
      count += static_cast<long long>(std::floor(tmax * g - 0.5)) + 1;
    }
    pixel = std::max(pixel, std::abs(halfplane_box_area(cc, x, y) - static_cast<double>(count) / (double(g) * g)));
  }
  c.check("halfplane area vs pixel count", pixel < 2.0 / g, fmt("max diff %.2e", pixel));
}

void uniformity(Criterion& c) {
  CounterRng rng(SeedSpec{kSeed, Purpose::test, 9});
  const std::vector<Partition> parts{vertical_partition(7, 2), jittered_partition(5, 2), equivolume_diag_partition(9),
                                     equivolume_diag_partition(2), vertical_partition(4, 3)};
  double worst = 0.0;
  bool sandwich = true;
  for (const auto& p : parts) {
    for (int t = 0; t < 1000; ++t) {
      Vector a(p.dim()), b(p.dim());
      for (int k = 0; k < p.dim(); ++k) {
        a[k] = rng.uniform();
        b[k] = rng.uniform();
      }
      const auto box = AxisBox::make(a.cwiseMin(b), a.cwiseMax(b));
      worst = std::max(worst, std::abs(a_n_statistic(p, box) - box.volume()));
      const auto ic = index_counts(p, box);
      const double n = p.size();
      sandwich = sandwich && ic.inside / n <= box.volume() + 1e-12 && box.volume() <= (ic.inside + ic.touching) / n + 1e-12;
    }
  }
  c.check("a_N = |b| on 1000 random boxes per partition", worst <= 1e-12, fmt("max diff %.2e", worst));
  bool zero = true;
  for (int n : {1, 2, 10, 64, 256, 1000}) {
    for (int t = 0; t < 20; ++t) {
      Vector lo(2), hi(2);
      lo << 0.5 * rng.uniform(), 0.5 * rng.uniform();
      hi << lo[0] + 0.5 * rng.uniform() + 1e-3, lo[1] + 0.4 * rng.uniform() + 1e-3;
      zero = zero && index_counts(vertical_partition(n, 2), AxisBox::make(lo, hi)).inside == 0;
    }
  }
  c.check("vertical strips: I_B = 0 for boxes of height < 1", zero);
  c.check("I_B/N <= |b| <= (I_B + T_B)/N", sandwich);
}

void factor_two(Criterion& c) {
  std::string table;
  bool band = true;
  for (int n : kTable1N) {
    const double ratio = closed::mc<double>(n, 2) / expected_lp(equivolume_diag_partition(n), 2.0).value;
    table += (table.empty() ? "" : " ") + std::to_string(n) + ":" + fmt("%.4f", ratio);
    if (n >= 200) band = band && ratio >= 1.9 && ratio <= 2.1;
  }
  c.check("mc / equivolume_diag in [1.9, 2.1] for N >= 200", band, table);
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries{
      {1, "closed forms reproduce the Table 1 closed-form columns", closed_forms},
      {2, "quadrature engine reproduces the two- and three-set values", lemma_values},
      {3, "optimizer recovers the N=2 and N=3 optima", optimizer},
      {4, "four-slice partition beats jittered m=2", conjecture_n4},
      {5, "stratification never loses to i.i.d. sampling", partition_principle},
      {6, "Table 1 empirical columns", table1},
      {7, "Table 2 star discrepancy, d=2", table2},
      {8, "oracle equivalences", oracles},
      {9, "uniformity diagnostics", uniformity},
      {10, "factor-two trend", factor_two},
  };

  bool undocumented = false;
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c{e.id, e.title, {}};
    const auto t0 = std::chrono::steady_clock::now();
    e.run(c);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.passed();
    failed += !ok;
    undocumented = undocumented || c.undocumented_failure();
    std::printf("%s  criterion %2d: %s (%.1f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                ok || c.undocumented_failure() ? "" : "  [known, see README]");
    for (const auto& s : c.subs) {
      std::printf("        %-5s %s%s%s\n", s.passed ? "ok" : s.known ? "known" : "FAIL", s.name.c_str(),
                  s.detail.empty() ? "" : ": ", s.detail.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass; %s\n", static_cast<int>(entries.size()) - failed, entries.size(),
              undocumented ? "undocumented failures present" : "all failures are documented");
  return undocumented ? 1 : 0;
}
