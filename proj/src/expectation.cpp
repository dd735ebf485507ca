#include "strata/expectation.hpp"

#include "strata/discrepancy.hpp"
#include "strata/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace strata {

void pb_pmf_into(const Eigen::Ref<const Vector>& q, Vector& pmf) {
  const auto n = q.size();
  pmf.setZero(n + 1);
  pmf[0] = 1.0;
  Eigen::Index top = 0;   // highest index that can be nonzero
  Eigen::Index shift = 0;  // number of sure successes
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(q[i] >= -kMeasureTol && q[i] <= 1.0 + kMeasureTol)) {
      throw std::domain_error("pb_pmf: success probability outside [0,1]");
    }
    const double qi = std::clamp(q[i], 0.0, 1.0);
    if (qi == 0.0) continue;
    if (qi == 1.0) {
      ++shift;
      continue;
    }
    const double ri = 1.0 - qi;
    pmf[top + 1] = pmf[top] * qi;
    for (Eigen::Index k = top; k > 0; --k) pmf[k] = pmf[k] * ri + pmf[k - 1] * qi;
    pmf[0] *= ri;
    ++top;
  }
  if (shift > 0) {
    for (Eigen::Index k = top; k >= 0; --k) pmf[k + shift] = pmf[k];
    pmf.head(shift).setZero();
  }
}

PoissonBinomialPmf pb_pmf(const Eigen::Ref<const Vector>& q) {
  PoissonBinomialPmf out;
  pb_pmf_into(q, out.probabilities);
  return out;
}

double pmf_moment(const Vector& pmf, double target, double p) {
  const double n = static_cast<double>(pmf.size() - 1);
  double s = 0.0;
  for (Eigen::Index k = 0; k < pmf.size(); ++k) {
    if (pmf[k] != 0.0) s += pmf[k] * abs_pow(static_cast<double>(k) / n - target, p);
  }
  return s;
}

double fourth_moment_equivolume(const Eigen::Ref<const Vector>& q) {
  const double n = static_cast<double>(q.size());
  double sum_q = 0.0, sum_q2 = 0.0, sum_r = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const double qi = q[i] * (1.0 - q[i]);
    sum_q += qi;
    sum_q2 += qi * qi;
    sum_r += qi * (1.0 - 3.0 * qi);
  }
  // 3 * sum over ordered pairs i != j of Q_i Q_j
  const double cross = 3.0 * (sum_q * sum_q - sum_q2);
  return (sum_r + cross) / (n * n * n * n);
}

double pointwise_from_profile(const Eigen::Ref<const Vector>& q, double vol, double p, bool equivolume,
                              Vector& scratch) {
  const double n = static_cast<double>(q.size());
  if (p == 2.0) {
    double var = 0.0, mean = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      var += q[i] * (1.0 - q[i]);
      mean += q[i];
    }
    var /= n * n;
    if (equivolume) return var;
    const double bias = mean / n - vol;
    return var + bias * bias;
  }
  if (p == 4.0 && equivolume) return fourth_moment_equivolume(q);
  pb_pmf_into(q, scratch);
  return pmf_moment(scratch, vol, p);
}

double expected_pointwise(const Partition& part, const Vector& anchor, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("expected_pointwise: p must be >= 1");
  const auto prof = success_profile(part, anchor);
  const auto pmf = pb_pmf(prof.q);
  return pmf_moment(pmf.probabilities, anchored_volume(anchor), p);
}

std::string to_string(ExpectationMethod m) {
  switch (m) {
    case ExpectationMethod::closed_form: return "closed_form";
    case ExpectationMethod::quadrature: return "quadrature";
    case ExpectationMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

namespace {

std::string pointwise_path(const Partition& part, double p) {
  if (p == 2.0) return part.equivolume() ? "variance" : "variance+bias";
  if (p == 4.0 && part.equivolume()) return "fourth_moment";
  return "pmf";
}

}  // namespace

double expected_lp_midpoint(const Partition& part, double p, int resolution, std::size_t budget) {
  if (!(p >= 1.0)) throw std::invalid_argument("expected_lp: p must be >= 1");
  const int d = part.dim();
  const std::size_t total = checked_grid_size(resolution, d, budget);
  const std::size_t rows = total / static_cast<std::size_t>(resolution);
  const bool eqv = part.equivolume();
  const int n = part.size();
  const double h = 1.0 / resolution;

  std::vector<double> row_sum(rows, 0.0);
#pragma omp parallel
  {
    Vector anchor(d), q(n), scratch(n + 1);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
      // row r fixes coordinates 1..d-1; coordinate 0 runs along the row
      std::size_t rest = static_cast<std::size_t>(r);
      double tail_vol = 1.0;
      for (int k = 1; k < d; ++k) {
        anchor[k] = (static_cast<double>(rest % resolution) + 0.5) * h;
        tail_vol *= anchor[k];
        rest /= resolution;
      }
      double s = 0.0;
      for (int j = 0; j < resolution; ++j) {
        anchor[0] = (j + 0.5) * h;
        part.success_profile(anchor, q);
        s += pointwise_from_profile(q, anchor[0] * tail_vol, p, eqv, scratch);
      }
      row_sum[static_cast<std::size_t>(r)] = s;
    }
  }
  return pairwise_sum(row_sum) / static_cast<double>(total);
}

double expected_lp_binomial(int n, int dim, double p, int resolution, std::size_t budget) {
  if (n < 1 || dim < 1) throw std::invalid_argument("expected_lp_binomial: need n, dim >= 1");
  const std::size_t total = checked_grid_size(resolution, dim, budget);
  const std::size_t rows = total / static_cast<std::size_t>(resolution);
  const double h = 1.0 / resolution;
  std::vector<double> row_sum(rows, 0.0);
#pragma omp parallel
  {
    Vector q(n), scratch(n + 1);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
      std::size_t rest = static_cast<std::size_t>(r);
      double tail_vol = 1.0;
      for (int k = 1; k < dim; ++k) {
        tail_vol *= (static_cast<double>(rest % resolution) + 0.5) * h;
        rest /= resolution;
      }
      double s = 0.0;
      for (int j = 0; j < resolution; ++j) {
        const double vol = (j + 0.5) * h * tail_vol;
        q.setConstant(vol);
        pb_pmf_into(q, scratch);
        s += pmf_moment(scratch, vol, p);
      }
      row_sum[static_cast<std::size_t>(r)] = s;
    }
  }
  return pairwise_sum(row_sum) / static_cast<double>(total);
}

ExpectationResult expected_lp(const Partition& part, double p, const QuadratureOptions& options) {
  if (options.resolution < kMinQuadratureResolution) {
    throw std::invalid_argument("expected_lp: resolution must be >= " + std::to_string(kMinQuadratureResolution));
  }
  ExpectationResult r;
  r.p = p;
  r.method = ExpectationMethod::quadrature;
  r.resolution = options.resolution;
  r.path = pointwise_path(part, p);
  r.value = expected_lp_midpoint(part, p, options.resolution, options.budget);
  if (options.error_estimate) {
    // midpoint error is O(h^2) away from the kinks, so E_G - E_{G/2} ~ 3 err
    const double coarse = expected_lp_midpoint(part, p, options.resolution / 2, options.budget);
    r.error_estimate = std::abs(r.value - coarse) / 3.0;
  }
  r.value = std::max(0.0, r.value);
  return r;
}

ExpectationResult expected_lp_empirical(const Partition& part, double p, const EmpiricalOptions& options) {
  if (options.replicates < 2) throw std::invalid_argument("expected_lp_empirical: need at least 2 replicates");
  if (!(p >= 1.0)) throw std::invalid_argument("expected_lp_empirical: p must be >= 1");
  const int m = options.replicates;
  std::vector<double> values(m);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < m; ++r) {
    const SeedSpec seed{options.seed, Purpose::stratified, static_cast<std::uint64_t>(r)};
    const PointSet ps = sample_stratified(part, seed);
    values[r] = p == 2.0 ? l2_warnock(ps).value : lp_quadrature(ps, p, options.resolution).value;
  }
  const double mean = pairwise_sum(values) / m;
  std::vector<double> sq(m);
  for (int r = 0; r < m; ++r) sq[r] = (values[r] - mean) * (values[r] - mean);
  const double var = pairwise_sum(sq) / (m - 1);

  ExpectationResult res;
  res.value = mean;
  res.p = p;
  res.method = ExpectationMethod::monte_carlo;
  res.replicates = m;
  res.resolution = p == 2.0 ? 0 : options.resolution;
  res.error_estimate = std::sqrt(var / m);
  res.path = p == 2.0 ? "warnock" : "lp_quadrature";
  return res;
}

double hoeffding_gap(const Partition& part, const Vector& anchor, double p) {
  if (!part.equivolume()) throw std::invalid_argument("hoeffding_gap: partition is not equivolume");
  if (!(p > 1.0)) throw std::invalid_argument("hoeffding_gap: p must be > 1");
  const auto prof = success_profile(part, anchor);
  const double vol = anchored_volume(anchor);
  const Vector binomial = Vector::Constant(part.size(), std::clamp(vol, 0.0, 1.0));
  const auto pz = pb_pmf(prof.q.cwiseMax(0.0).cwiseMin(1.0));
  const auto pu = pb_pmf(binomial);
  return pmf_moment(pu.probabilities, vol, p) - pmf_moment(pz.probabilities, vol, p);
}

}  // namespace strata
