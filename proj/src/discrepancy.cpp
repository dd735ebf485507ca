#include "strata/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace strata {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_points(const PointSet& ps, const char* who) {
  if (ps.size() < 1 || ps.dim() < 1) throw std::invalid_argument(std::string(who) + ": empty point set");
}

// In-place cumulative sums along every axis of a d-dim array with the given
// extents (first axis fastest).
template <class T>
void prefix_sum_all_axes(std::vector<T>& a, const std::vector<std::size_t>& extent) {
  std::size_t stride = 1;
  const std::size_t total = a.size();
  for (std::size_t n : extent) {
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t j = 1; j < n; ++j) {
        T* cur = a.data() + base + j * stride;
        const T* prev = cur - stride;
        for (std::size_t s = 0; s < stride; ++s) cur[s] += prev[s];
      }
    }
    stride = block;
  }
}

// For each point and axis, the first lattice index whose anchor the point
// counts towards.  `strict` selects x < a (open boxes) over x <= a.
std::vector<std::uint32_t> counts_on_lattice(const PointSet& ps, const std::vector<std::vector<double>>& axes,
                                             bool strict) {
  const int d = ps.dim();
  std::vector<std::size_t> extent(d);
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) {
    extent[k] = axes[k].size();
    total *= extent[k];
  }
  std::vector<std::uint32_t> counts(total, 0);
  for (int i = 0; i < ps.size(); ++i) {
    std::size_t flat = 0, stride = 1;
    bool inside = true;
    for (int k = 0; k < d; ++k) {
      const auto& ax = axes[k];
      const double x = ps.points(i, k);
      auto it = strict ? std::upper_bound(ax.begin(), ax.end(), x) : std::lower_bound(ax.begin(), ax.end(), x);
      const std::size_t b = static_cast<std::size_t>(it - ax.begin());
      if (b >= extent[k]) {
        inside = false;
        break;
      }
      flat += b * stride;
      stride *= extent[k];
    }
    if (inside) ++counts[flat];
  }
  prefix_sum_all_axes(counts, extent);
  return counts;
}

// Calls f(flat_index, anchored volume) for every lattice node.
template <class F>
void for_each_node(const std::vector<std::vector<double>>& axes, F&& f) {
  const int d = static_cast<int>(axes.size());
  std::vector<std::size_t> idx(d, 0);
  std::size_t total = 1;
  for (const auto& ax : axes) total *= ax.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    double vol = 1.0;
    for (int k = 0; k < d; ++k) vol *= axes[k][idx[k]];
    f(flat, vol);
    for (int k = 0; k < d; ++k) {
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
    }
  }
}

}  // namespace

std::string to_string(DiscrepancyKind k) {
  switch (k) {
    case DiscrepancyKind::l2: return "l2";
    case DiscrepancyKind::lp: return "lp";
    case DiscrepancyKind::star_exact: return "star_exact";
    case DiscrepancyKind::star_grid: return "star_grid";
  }
  return "unknown";
}

DiscrepancyResult l2_warnock(const PointSet& ps) {
  require_points(ps, "l2_warnock");
  const int n = ps.size(), d = ps.dim();
  const RowMajor y = (1.0 - ps.points.array()).matrix();

  std::vector<double> single(n), pair(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int m = 0; m < n; ++m) {
    const double* ym = y.data() + static_cast<std::ptrdiff_t>(m) * d;
    double s = 1.0, diag = 1.0;
    for (int k = 0; k < d; ++k) {
      s *= 0.5 * (1.0 - (1.0 - ym[k]) * (1.0 - ym[k]));
      diag *= ym[k];
    }
    double off = 0.0;
    for (int j = m + 1; j < n; ++j) {
      const double* yj = y.data() + static_cast<std::ptrdiff_t>(j) * d;
      double prod = 1.0;
      for (int k = 0; k < d; ++k) prod *= std::min(ym[k], yj[k]);
      off += prod;
    }
    single[m] = s;
    pair[m] = diag + 2.0 * off;
  }
  const double nn = static_cast<double>(n);
  double value = std::pow(3.0, -d) - 2.0 / nn * pairwise_sum(single) + pairwise_sum(pair) / (nn * nn);

  DiscrepancyResult r;
  r.value = std::max(0.0, value);
  r.kind = DiscrepancyKind::l2;
  r.p = 2.0;
  r.exact = true;
  r.points = n;
  r.dim = d;
  return r;
}

DiscrepancyResult lp_quadrature(const PointSet& ps, double p, int resolution, std::size_t budget) {
  require_points(ps, "lp_quadrature");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_quadrature: p must be >= 1");
  if (resolution < 2) throw std::invalid_argument("lp_quadrature: resolution must be >= 2");
  const int d = ps.dim();
  checked_grid_size(resolution, d, budget);

  std::vector<double> mid(resolution);
  for (int j = 0; j < resolution; ++j) mid[j] = (j + 0.5) / resolution;
  std::vector<std::vector<double>> axes(d, mid);
  const auto counts = counts_on_lattice(ps, axes, true);

  // one partial sum per row along the first axis, then a fixed-shape reduction
  const std::size_t rows = counts.size() / static_cast<std::size_t>(resolution);
  std::vector<double> row_sum(rows, 0.0);
  const double inv_n = 1.0 / ps.size();
  for_each_node(axes, [&](std::size_t flat, double vol) {
    row_sum[flat / resolution] += abs_pow(counts[flat] * inv_n - vol, p);
  });

  DiscrepancyResult r;
  r.value = pairwise_sum(row_sum) / static_cast<double>(counts.size());
  r.kind = DiscrepancyKind::lp;
  r.p = p;
  r.resolution = resolution;
  r.points = ps.size();
  r.dim = d;
  return r;
}

DiscrepancyResult star_disc_exact_2d(const PointSet& ps) {
  require_points(ps, "star_disc_exact_2d");
  if (ps.dim() != 2) throw std::invalid_argument("star_disc_exact_2d: requires d = 2");
  const int n = ps.size();
  if (n > kStarExactMaxPoints) {
    throw std::length_error("star_disc_exact_2d: N = " + std::to_string(n) + " exceeds " +
                            std::to_string(kStarExactMaxPoints) + "; use star_disc_grid");
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ps.points(a, 0) < ps.points(b, 0); });

  std::vector<double> ys(n);
  for (int i = 0; i < n; ++i) ys[i] = ps.points(i, 1);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<double> ys_open = ys;
  if (ys_open.back() < 1.0) ys_open.push_back(1.0);

  const double inv_n = 1.0 / n;
  double best = 0.0;
  std::vector<double> active;  // sorted y of inserted points
  active.reserve(n);

  // vol - #{x < X, y < Y}/N over the open critical corners
  auto eval_open = [&](double x) {
    std::size_t c = 0;
    for (double y : ys_open) {
      while (c < active.size() && active[c] < y) ++c;
      best = std::max(best, x * y - static_cast<double>(c) * inv_n);
    }
  };
  // #{x <= X, y <= Y}/N - vol over the closed critical corners
  auto eval_closed = [&](double x) {
    std::size_t c = 0;
    for (double y : ys) {
      while (c < active.size() && active[c] <= y) ++c;
      best = std::max(best, static_cast<double>(c) * inv_n - x * y);
    }
  };

  int i = 0;
  while (i < n) {
    const double x = ps.points(order[i], 0);
    eval_open(x);
    while (i < n && ps.points(order[i], 0) == x) {
      const double y = ps.points(order[i], 1);
      active.insert(std::upper_bound(active.begin(), active.end(), y), y);
      ++i;
    }
    eval_closed(x);
  }
  if (ps.points(order.back(), 0) < 1.0) eval_open(1.0);

  DiscrepancyResult r;
  r.value = best;
  r.kind = DiscrepancyKind::star_exact;
  r.p = std::numeric_limits<double>::infinity();
  r.exact = true;
  r.points = n;
  r.dim = 2;
  return r;
}

DiscrepancyResult star_disc_grid(const PointSet& ps, const StarGridOptions& options) {
  require_points(ps, "star_disc_grid");
  const int n = ps.size(), d = ps.dim();
  const int g = options.resolution;
  if (g < 1) throw std::invalid_argument("star_disc_grid: resolution must be >= 1");

  std::vector<double> lattice(g + 1);
  for (int j = 0; j <= g; ++j) lattice[j] = static_cast<double>(j) / g;

  auto build_axes = [&](bool augment) {
    std::vector<std::vector<double>> axes(d);
    for (int k = 0; k < d; ++k) {
      axes[k] = lattice;
      if (augment) {
        for (int i = 0; i < n; ++i) axes[k].push_back(ps.points(i, k));
        std::sort(axes[k].begin(), axes[k].end());
        axes[k].erase(std::unique(axes[k].begin(), axes[k].end()), axes[k].end());
      }
    }
    return axes;
  };
  auto node_count = [](const std::vector<std::vector<double>>& axes) {
    double t = 1.0;
    for (const auto& ax : axes) t *= static_cast<double>(ax.size());
    return t;
  };

  bool augment = options.augment == Augment::always;
  std::vector<std::vector<double>> axes;
  if (options.augment == Augment::automatic) {
    axes = build_axes(true);
    augment = node_count(axes) <= static_cast<double>(options.budget);
    if (!augment) axes = build_axes(false);
  } else {
    axes = build_axes(augment);
  }
  if (node_count(axes) > static_cast<double>(options.budget)) {
    throw std::length_error("star_disc_grid: lattice of " + std::to_string(node_count(axes)) +
                            " nodes exceeds the node budget of " + std::to_string(options.budget));
  }

  const double inv_n = 1.0 / n;
  double best = 0.0;
  {
    const auto open = counts_on_lattice(ps, axes, true);
    for_each_node(axes, [&](std::size_t f, double vol) { best = std::max(best, vol - open[f] * inv_n); });
  }
  {
    const auto closed = counts_on_lattice(ps, axes, false);
    for_each_node(axes, [&](std::size_t f, double vol) { best = std::max(best, closed[f] * inv_n - vol); });
  }

  // every point as a box corner, open and closed
  const RowMajor pts = ps.points;
  std::vector<double> corner_best(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int a = 0; a < n; ++a) {
    const double* c = pts.data() + static_cast<std::ptrdiff_t>(a) * d;
    double vol = 1.0;
    for (int k = 0; k < d; ++k) vol *= c[k];
    int open = 0, closed = 0;
    for (int b = 0; b < n; ++b) {
      const double* x = pts.data() + static_cast<std::ptrdiff_t>(b) * d;
      bool lt = true, le = true;
      for (int k = 0; k < d && le; ++k) {
        lt = lt && x[k] < c[k];
        le = x[k] <= c[k];
      }
      open += lt && le;
      closed += le;
    }
    corner_best[a] = std::max(vol - open * inv_n, closed * inv_n - vol);
  }
  for (double v : corner_best) best = std::max(best, v);

  DiscrepancyResult r;
  r.value = best;
  r.kind = DiscrepancyKind::star_grid;
  r.p = std::numeric_limits<double>::infinity();
  r.resolution = g;
  r.lower_bound = true;
  r.augmented = augment;
  r.points = n;
  r.dim = d;
  return r;
}

}  // namespace strata
