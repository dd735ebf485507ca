#include "strata/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef STRATA_VERSION
#define STRATA_VERSION "dev"
#endif

namespace strata {

std::string library_version() { return STRATA_VERSION; }

std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

std::string format_double17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& text) {
  size_t b = text.find_first_not_of(" \t\r\n");
  size_t e = text.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) throw std::invalid_argument("parse_double: empty field");
  const char* first = text.data() + b;
  const char* last = text.data() + e + 1;
  if (*first == '+') ++first;
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc{} || ptr != last) throw std::invalid_argument("parse_double: bad number '" + text + "'");
  return x;
}

Json to_json(const PartitionSpec& spec) {
  Json j;
  j["family"] = to_string(spec.family);
  j["dim"] = spec.dim;
  j["n"] = spec.n;
  if (!spec.v.empty()) j["v"] = spec.v;
  return j;
}

PartitionSpec partition_spec_from_json(const Json& j) {
  PartitionSpec s;
  s.family = family_from_string(j.at("family").get<std::string>());
  s.dim = j.value("dim", 2);
  s.n = j.at("n").get<int>();
  if (j.contains("v")) s.v = j.at("v").get<std::vector<double>>();
  return s;
}

PartitionSpec read_partition_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open partition file " + path);
  return partition_spec_from_json(Json::parse(in));
}

void write_partition_spec(const std::string& path, const PartitionSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(spec).dump(2) << '\n';
}

void write_points_csv(std::ostream& os, const PointSet& ps) {
  for (int k = 0; k < ps.dim(); ++k) os << (k ? "," : "") << 'x' << (k + 1);
  os << '\n';
  for (int i = 0; i < ps.size(); ++i) {
    for (int k = 0; k < ps.dim(); ++k) os << (k ? "," : "") << format_double17(ps.points(i, k));
    os << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

bool is_header(const std::vector<std::string>& fields) {
  for (const auto& f : fields) {
    try {
      parse_double(f);
    } catch (const std::invalid_argument&) {
      return true;
    }
  }
  return false;
}

}  // namespace

PointSet read_points_csv(std::istream& is) {
  std::string line;
  std::vector<std::vector<double>> rows;
  size_t dim = 0;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (first && is_header(fields)) {
      first = false;
      dim = fields.size();
      continue;
    }
    first = false;
    if (dim == 0) dim = fields.size();
    if (fields.size() != dim) throw std::invalid_argument("read_points_csv: ragged row");
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_double(f));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_points_csv: no points");
  PointMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < dim; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  return PointSet(std::move(m));
}

PointSet read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file " + path);
  return read_points_csv(in);
}

Json to_json(const DiscrepancyResult& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["value"] = r.value;
  Json meta;
  if (std::isfinite(r.p)) meta["p"] = r.p;
  meta["points"] = r.points;
  meta["dim"] = r.dim;
  meta["resolution"] = r.resolution;
  meta["exact"] = r.exact;
  if (r.kind == DiscrepancyKind::star_grid) {
    meta["lower_bound"] = r.lower_bound;
    meta["augmented"] = r.augmented;
  }
  j["metadata"] = meta;
  return j;
}

Json to_json(const ExpectationResult& r) {
  Json j;
  j["value"] = r.value;
  j["p"] = r.p;
  j["method"] = to_string(r.method);
  if (r.method == ExpectationMethod::monte_carlo) {
    j["replicates"] = r.replicates;
    j["standard_error"] = r.error_estimate;
  } else {
    j["resolution"] = r.resolution;
    j["error_estimate"] = r.error_estimate;
  }
  j["path"] = r.path;
  return j;
}

Json to_json(const OptimizationResult& r) {
  Json j;
  j["v"] = r.v;
  j["value"] = r.value;
  j["objective"] = {{"p", r.p}, {"resolution", r.resolution}};
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  j["restarts"] = r.restarts;
  j["converged"] = r.converged;
  return j;
}

void write_csv(std::ostream& os, const ScanTable& t) {
  for (size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << (std::isnan(row[c]) ? "" : format_double17(row[c]));
    os << '\n';
  }
}

void write_csv(std::ostream& os, const UniformityReport& r) {
  os << "family,n,box,box_volume,a_n,inside_fraction,touching_fraction,avg_diameter\n";
  for (const auto& row : r.rows) {
    os << to_string(r.family) << ',' << row.n << ',' << row.box << ',' << format_double17(row.box_volume) << ','
       << format_double17(row.a_n) << ',' << format_double17(row.inside_fraction) << ','
       << format_double17(row.touching_fraction) << ',' << format_double17(row.avg_diameter) << '\n';
  }
}

std::vector<AxisBox> read_boxes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open box file " + path);
  std::vector<AxisBox> boxes;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (is_header(fields)) continue;
    if (fields.size() % 2 != 0) throw std::invalid_argument("read_boxes_csv: need lo1..lod,hi1..hid");
    const auto d = static_cast<Eigen::Index>(fields.size() / 2);
    Vector lo(d), hi(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      lo[k] = parse_double(fields[static_cast<size_t>(k)]);
      hi[k] = parse_double(fields[static_cast<size_t>(k + d)]);
    }
    boxes.push_back(AxisBox::make(lo, hi));
  }
  return boxes;
}

Json to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["outputs"] = m.outputs;
  j["threads"] = m.threads;
  j["wall_seconds"] = m.wall_seconds;
  return j;
}

}  // namespace strata
