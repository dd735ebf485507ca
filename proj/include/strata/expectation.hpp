#pragma once

#include "strata/geometry.hpp"
#include "strata/numerics.hpp"
#include "strata/rng.hpp"

#include <cstdint>
#include <string>

namespace strata {

/// Law of the number of successes among independent Bernoulli(q_i).
struct PoissonBinomialPmf {
  Vector probabilities;  // index k = number of successes, 0..N
};

/// O(N^2) convolution.  q_i outside [0,1] is rejected.
PoissonBinomialPmf pb_pmf(const Eigen::Ref<const Vector>& q);

/// In-place variant on a caller-owned buffer of size N+1; entries q_i equal
/// to 0 or 1 cost nothing.
void pb_pmf_into(const Eigen::Ref<const Vector>& q, Vector& pmf);

/// E|K/N - target|^p for K ~ pmf.
double pmf_moment(const Vector& pmf, double target, double p);

/// E|Z_x - vol(anchor)|^p by the Poisson-binomial law of the count.
double expected_pointwise(const Partition& part, const Vector& anchor, double p);

/// The same quantity from a success profile, using the variance / fourth
/// moment formulas where they apply.  `scratch` holds the PMF if needed.
double pointwise_from_profile(const Eigen::Ref<const Vector>& q, double vol, double p, bool equivolume,
                              Vector& scratch);

/// Centered fourth moment of Z_x for an equivolume partition:
/// (sum R_i + 3 sum_{i != j} Q_i Q_j) / N^4 with Q = q(1-q), R = Q(1-3Q).
double fourth_moment_equivolume(const Eigen::Ref<const Vector>& q);

enum class ExpectationMethod { closed_form, quadrature, monte_carlo };

std::string to_string(ExpectationMethod m);

struct ExpectationResult {
  double value = 0.0;
  double p = 2.0;
  ExpectationMethod method = ExpectationMethod::quadrature;
  int resolution = 0;    // quadrature G
  int replicates = 0;    // monte_carlo M
  double error_estimate = 0.0;  // quadrature: |E_G - E_{G/2}| / 3; monte_carlo: standard error
  std::string path;      // which pointwise formula was used
};

struct QuadratureOptions {
  int resolution = 1024;
  bool error_estimate = true;
  std::size_t budget = kDefaultNodeBudget;
};

inline constexpr int kMinQuadratureResolution = 16;

/// Tensor midpoint rule of the pointwise expectation over [0,1]^d.
ExpectationResult expected_lp(const Partition& part, double p, const QuadratureOptions& options = {});

/// Plain midpoint sum at one resolution, no error estimate.
double expected_lp_midpoint(const Partition& part, double p, int resolution,
                            std::size_t budget = kDefaultNodeBudget);

/// The same integral for N i.i.d. uniform points, where every q_i = vol.
double expected_lp_binomial(int n, int dim, double p, int resolution, std::size_t budget = kDefaultNodeBudget);

struct EmpiricalOptions {
  int replicates = 500;
  std::uint64_t seed = 0;
  int resolution = 256;  // lp_quadrature grid when p != 2
};

/// Mean discrepancy over seeded stratified samples, with its standard error.
ExpectationResult expected_lp_empirical(const Partition& part, double p, const EmpiricalOptions& options);

/// M_p(U_x) - M_p(Z_x), where U_x uses the binomial profile q_i = vol(anchor).
double hoeffding_gap(const Partition& part, const Vector& anchor, double p);

}  // namespace strata
