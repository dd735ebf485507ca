#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace strata {

struct OptimizeOptions {
  int restarts = 16;
  double tol = 1e-5;     // simplex diameter in v-space
  int max_iter = 400;    // per Nelder-Mead run
  int resolution = 1024;  // quadrature G for the final polish; restarts use G/4
  std::uint64_t seed = 0;
  /// Extra deterministic start point (length N-1) tried before the random ones.
  std::optional<std::vector<double>> start;
};

struct OptimizationResult {
  std::vector<double> v;  // strictly increasing in (0, sqrt 2)
  double value = 0.0;
  double p = 2.0;
  int resolution = 0;
  std::string method = "nelder-mead/logistic";
  int iterations = 0;  // total over all runs
  int restarts = 0;
  bool converged = false;
};

/// Multi-start Nelder-Mead over the diagonal family with N strata.
OptimizationResult minimize_family(int n, double p, const OptimizeOptions& options = {});

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Plain Nelder-Mead on R^k.  Stops when `diameter(simplex) < tol` or after
/// max_iter iterations; `diameter` measures the simplex in caller units.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             double step, double tol, int max_iter,
                             const std::function<double(const std::vector<std::vector<double>>&)>& diameter);

/// v = sort(sqrt(2) * logistic(w)) and its inverse.
std::vector<double> cuts_from_unconstrained(const std::vector<double>& w);
std::vector<double> unconstrained_from_cuts(const std::vector<double>& v);

struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

enum class ScanExample { convex2, diag2, diag3 };

struct ScanOptions {
  ScanExample example = ScanExample::diag2;
  int steps = 101;
  int resolution = 0;   // quadrature G for the geometry column; 0 skips it
  double fixed_a = 0.72550;  // diag3: the A of the B-curve
  int a_steps = 0;      // diag3: > 0 turns the curve into an A x B grid
};

/// Curve data for the one- and two-cut families.  Cells outside a formula's
/// domain are NaN.
ScanTable scan(const ScanOptions& options);

}  // namespace strata
