#include "strata/optimize.hpp"

#include "strata/closed_forms.hpp"
#include "strata/expectation.hpp"
#include "strata/geometry.hpp"
#include "strata/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace strata {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double diameter_in_v(const std::vector<std::vector<double>>& simplex) {
  double best = 0.0;
  std::vector<std::vector<double>> vs;
  vs.reserve(simplex.size());
  for (const auto& w : simplex) vs.push_back(cuts_from_unconstrained(w));
  for (size_t i = 0; i < vs.size(); ++i) {
    for (size_t j = i + 1; j < vs.size(); ++j) {
      double s = 0.0;
      for (size_t k = 0; k < vs[i].size(); ++k) s += (vs[i][k] - vs[j][k]) * (vs[i][k] - vs[j][k]);
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

double objective(const std::vector<double>& v, double p, int resolution) {
  for (size_t k = 0; k < v.size(); ++k) {
    const double lo = k == 0 ? 0.0 : v[k - 1];
    if (!(v[k] > lo) || !(v[k] < kSqrt2)) return kInf;
  }
  try {
    return expected_lp_midpoint(diag_partition(v), p, resolution);
  } catch (const std::exception&) {
    return kInf;  // a slice of measure (numerically) zero
  }
}

}  // namespace

std::vector<double> cuts_from_unconstrained(const std::vector<double>& w) {
  std::vector<double> v(w.size());
  for (size_t k = 0; k < w.size(); ++k) v[k] = kSqrt2 * logistic(w[k]);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> unconstrained_from_cuts(const std::vector<double>& v) {
  std::vector<double> w(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    const double t = std::clamp(v[k] / kSqrt2, 1e-12, 1.0 - 1e-12);
    w[k] = std::log(t / (1.0 - t));
  }
  return w;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             double step, double tol, int max_iter,
                             const std::function<double(const std::vector<std::vector<double>>&)>& diameter) {
  const size_t k = x0.size();
  std::vector<std::vector<double>> s(k + 1, x0);
  for (size_t i = 0; i < k; ++i) s[i + 1][i] += step;
  std::vector<double> fs(k + 1);
  for (size_t i = 0; i <= k; ++i) fs[i] = f(s[i]);

  std::vector<size_t> order(k + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (fs[a] != fs[b]) return fs[a] < fs[b];
      return lex_less(s[a], s[b]);
    });
    std::vector<std::vector<double>> s2(k + 1);
    std::vector<double> f2(k + 1);
    for (size_t i = 0; i <= k; ++i) {
      s2[i] = s[order[i]];
      f2[i] = fs[order[i]];
    }
    s = std::move(s2);
    fs = std::move(f2);
  };
  auto along = [&](const std::vector<double>& c, const std::vector<double>& x, double t) {
    std::vector<double> y(k);
    for (size_t i = 0; i < k; ++i) y[i] = c[i] + t * (x[i] - c[i]);
    return y;
  };

  NelderMeadResult out;
  int it = 0;
  sort_simplex();
  for (; it < max_iter; ++it) {
    if (diameter(s) < tol) {
      out.converged = true;
      break;
    }
    std::vector<double> c(k, 0.0);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) c[j] += s[i][j] / static_cast<double>(k);

    const auto xr = along(c, s[k], -1.0);
    const double fr = f(xr);
    if (fr < fs[0]) {
      const auto xe = along(c, s[k], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[k] = xe;
        fs[k] = fe;
      } else {
        s[k] = xr;
        fs[k] = fr;
      }
    } else if (fr < fs[k - 1]) {
      s[k] = xr;
      fs[k] = fr;
    } else {
      const bool outside = fr < fs[k];
      const auto xc = outside ? along(c, s[k], -0.5) : along(c, s[k], 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fs[k])) {
        s[k] = xc;
        fs[k] = fc;
      } else {
        for (size_t i = 1; i <= k; ++i) {
          s[i] = along(s[0], s[i], 0.5);
          fs[i] = f(s[i]);
        }
      }
    }
    sort_simplex();
  }
  if (!out.converged && diameter(s) < tol) out.converged = true;
  out.x = s[0];
  out.value = fs[0];
  out.iterations = it;
  return out;
}

OptimizationResult minimize_family(int n, double p, const OptimizeOptions& options) {
  if (n < 2) throw std::invalid_argument("minimize_family: need N >= 2");
  if (options.restarts < 1) throw std::invalid_argument("minimize_family: need at least one restart");
  const int fine = options.resolution;
  const int coarse = std::max(kMinQuadratureResolution, fine / 4);
  const size_t k = static_cast<size_t>(n - 1);

  std::vector<std::vector<double>> starts;
  starts.push_back(equivolume_diag_cuts(n));
  starts.push_back(equidistant_diag_cuts(n));
  if (options.start) {
    if (options.start->size() != k) throw std::invalid_argument("minimize_family: start must have N-1 entries");
    starts.push_back(*options.start);
  }
  for (std::uint64_t r = 0; static_cast<int>(starts.size()) < options.restarts; ++r) {
    CounterRng rng(SeedSpec{options.seed, Purpose::optimizer, r});
    std::vector<double> v(k);
    for (auto& x : v) x = kSqrt2 * (0.02 + 0.96 * rng.uniform());
    std::sort(v.begin(), v.end());
    starts.push_back(v);
  }
  starts.resize(static_cast<size_t>(std::max<int>(options.restarts, 1)));

  std::vector<NelderMeadResult> runs(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(starts.size()); ++i) {
    auto f = [&](const std::vector<double>& w) { return objective(cuts_from_unconstrained(w), p, coarse); };
    runs[static_cast<size_t>(i)] = nelder_mead(f, unconstrained_from_cuts(starts[static_cast<size_t>(i)]), 0.3,
                                               options.tol, options.max_iter, diameter_in_v);
  }

  size_t best = 0;
  for (size_t i = 1; i < runs.size(); ++i) {
    const auto vi = cuts_from_unconstrained(runs[i].x), vb = cuts_from_unconstrained(runs[best].x);
    if (runs[i].value < runs[best].value || (runs[i].value == runs[best].value && lex_less(vi, vb))) best = i;
  }

  auto f_fine = [&](const std::vector<double>& w) { return objective(cuts_from_unconstrained(w), p, fine); };
  auto polish = nelder_mead(f_fine, runs[best].x, 0.05, options.tol, options.max_iter, diameter_in_v);

  OptimizationResult res;
  res.p = p;
  res.resolution = fine;
  res.restarts = static_cast<int>(starts.size());
  res.iterations = polish.iterations;
  for (const auto& r : runs) res.iterations += r.iterations;
  res.v = cuts_from_unconstrained(polish.x);
  res.value = polish.value;
  res.converged = polish.converged;

  // never return something worse than the equivolume seed
  const double seed_value = objective(starts[0], p, fine);
  if (seed_value < res.value) {
    res.v = starts[0];
    res.value = seed_value;
  }
  return res;
}

ScanTable scan(const ScanOptions& options) {
  if (options.steps < 2) throw std::invalid_argument("scan: need at least 2 steps");
  ScanTable t;
  const int m = options.steps;
  auto geometry = [&](const std::vector<double>& v) {
    return options.resolution > 0 ? objective(v, 2.0, options.resolution) : kNaN;
  };

  switch (options.example) {
    case ScanExample::convex2: {
      t.columns = {"A", "n2_convex"};
      for (int j = 0; j < m; ++j) {
        const double a = static_cast<double>(j) / (m - 1);
        t.rows.push_back({a, closed::n2_convex(a)});
      }
      break;
    }
    case ScanExample::diag2: {
      t.columns = {"v", "A", "B", "n2_diag", "n2_diag_b", "quadrature"};
      for (int j = 1; j <= m; ++j) {
        const double v = kSqrt2 * j / (m + 1);
        const bool upper = 2 * j >= m + 1, lower = 2 * j <= m + 1;
        const double b = 2.0 * j / (m + 1), a = b - 1.0;
        t.rows.push_back({v, upper ? a : kNaN, lower ? b : kNaN, upper ? closed::n2_diag(a) : kNaN,
                          lower ? closed::n2_diag_b(b) : kNaN, geometry({v})});
      }
      break;
    }
    case ScanExample::diag3: {
      t.columns = {"A", "B", "v1", "v2", "n3_case2", "n3_main", "n3_appendix", "quadrature"};
      std::vector<double> as;
      if (options.a_steps > 0) {
        for (int i = 0; i < options.a_steps; ++i) as.push_back(0.5 + 0.499 * i / std::max(1, options.a_steps - 1));
      } else {
        if (!(options.fixed_a >= 0.5 && options.fixed_a < 1.0)) throw std::domain_error("scan: A must lie in [1/2, 1)");
        as.push_back(options.fixed_a);
      }
      for (double a : as) {
        for (int j = 0; j < m; ++j) {
          const double b = a * j / (m - 1);
          const bool low = b <= 2 * a - 1, high = b >= 2 * a - 1;
          const std::vector<double> v{a / kSqrt2, (b + 1.0) / kSqrt2};
          t.rows.push_back({a, b, v[0], v[1], low ? closed::n3_case2(a, b) : kNaN,
                            high ? closed::n3_main(a, b) : kNaN, high ? closed::n3_appendix(a, b) : kNaN,
                            geometry(v)});
        }
      }
      break;
    }
  }
  return t;
}

}  // namespace strata
