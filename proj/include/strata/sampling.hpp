#pragma once

#include "strata/geometry.hpp"
#include "strata/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace strata {

using PointMatrix = Eigen::MatrixXd;  // one point per row

struct Provenance {
  std::string family = "custom";
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

/// N points in [0,1]^d.
struct PointSet {
  PointMatrix points;
  Provenance provenance;

  PointSet() = default;
  explicit PointSet(PointMatrix pts, Provenance prov = {});

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

/// How DiagonalSlice strata are sampled.  Both are exact; inverse_cdf draws
/// the level x+y from its marginal and is O(1), rejection draws from the
/// slice's bounding box.
enum class SliceMethod { inverse_cdf, rejection };

inline constexpr int kRejectionCap = 1'000'000;

PointSet sample_mc(int n, int dim, const SeedSpec& seed);

/// One uniform point in s.  Throws std::runtime_error when rejection sampling
/// exceeds kRejectionCap attempts.
Vector sample_in_set(const PartitionSet& s, CounterRng& rng,
                     SliceMethod method = SliceMethod::inverse_cdf);

/// Point i is uniform in stratum i and drawn from its own stream (lane i).
PointSet sample_stratified(const Partition& p, const SeedSpec& seed,
                           SliceMethod method = SliceMethod::inverse_cdf);

}  // namespace strata
