#pragma once

#include "strata/discrepancy.hpp"
#include "strata/expectation.hpp"
#include "strata/geometry.hpp"
#include "strata/optimize.hpp"
#include "strata/sampling.hpp"
#include "strata/uniformity.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace strata {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double (at most 17 digits).
std::string format_double(double x);
/// Fixed 17-significant-digit decimal, as used in CSV output.
std::string format_double17(double x);
double parse_double(const std::string& text);

Json to_json(const PartitionSpec& spec);
PartitionSpec partition_spec_from_json(const Json& j);
PartitionSpec read_partition_spec(const std::string& path);
void write_partition_spec(const std::string& path, const PartitionSpec& spec);

/// Header x1,...,xd then one row per point.
void write_points_csv(std::ostream& os, const PointSet& ps);
PointSet read_points_csv(std::istream& is);
PointSet read_points_csv(const std::string& path);

Json to_json(const DiscrepancyResult& r);
Json to_json(const ExpectationResult& r);
Json to_json(const OptimizationResult& r);

void write_csv(std::ostream& os, const ScanTable& t);
void write_csv(std::ostream& os, const UniformityReport& r);

/// Reads boxes as rows lo1..lod,hi1..hid (header optional).
std::vector<AxisBox> read_boxes_csv(const std::string& path);

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> outputs;
  int threads = 1;
  double wall_seconds = 0.0;
};

Json to_json(const RunManifest& m);

std::string library_version();

}  // namespace strata
