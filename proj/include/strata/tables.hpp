#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace strata {

struct Table1Options {
  int replicates = 500;
  std::uint64_t seed = 0;
  int resolution = 1024;  // quadrature G for the expected-value columns; 0 skips them
  std::vector<int> ns{50, 100, 150, 200, 256, 300, 350, 400, 450};
};

/// Mean L2^2 by family.  Jittered columns are filled where N is a square.
struct Table1Row {
  int n = 0;
  double mc = 0.0;        // closed form
  double vertical = 0.0;  // closed form
  double diag_mean = 0.0, diag_se = 0.0, diag_expected = 0.0;
  bool has_jittered = false;
  double jit_mean = 0.0, jit_se = 0.0, jit_expected = 0.0;
};

std::vector<Table1Row> reproduce_table1(const Table1Options& options);
std::string table1_csv(const std::vector<Table1Row>& rows);

struct Table2Options {
  int runs = 20;
  std::uint64_t seed = 0;
  int grid_d3 = 64;  // star_disc_grid resolution for d = 3
  int grid_d5 = 8;   // and for d = 5
};

/// Mean star discrepancy per (d, N, family).  d = 2 rows are exact; the rest
/// are lattice lower bounds and carry method "approximate (grid)".
struct Table2Row {
  int dim = 0;
  int n = 0;
  std::string family;
  double mean = 0.0;
  double se = 0.0;
  std::string method;
  int resolution = 0;
  bool grid_dominated = true;  // d = 2: grid value <= exact value on every run
};

std::vector<Table2Row> reproduce_table2(const Table2Options& options);
std::string table2_csv(const std::vector<Table2Row>& rows);

}  // namespace strata
