#include "strata/tables.hpp"

#include "strata/closed_forms.hpp"
#include "strata/discrepancy.hpp"
#include "strata/expectation.hpp"
#include "strata/io.hpp"
#include "strata/sampling.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace strata {

namespace {

bool is_square(int n) {
  const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return m * m == n;
}

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double m = pairwise_sum(xs) / static_cast<double>(xs.size());
  std::vector<double> sq(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - m) * (xs[i] - m);
  const double var = xs.size() > 1 ? pairwise_sum(sq) / static_cast<double>(xs.size() - 1) : 0.0;
  return {m, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace

std::vector<Table1Row> reproduce_table1(const Table1Options& options) {
  if (options.replicates < 100) throw std::invalid_argument("reproduce_table1: need at least 100 replicates");
  std::vector<Table1Row> rows;
  for (int n : options.ns) {
    Table1Row r;
    r.n = n;
    r.mc = closed::mc<double>(n, 2);
    r.vertical = closed::vertical<double>(n, 2);
    EmpiricalOptions eo{options.replicates, options.seed, 0};
    const Partition diag = equivolume_diag_partition(n);
    const auto de = expected_lp_empirical(diag, 2.0, eo);
    r.diag_mean = de.value;
    r.diag_se = de.error_estimate;
    if (options.resolution > 0) r.diag_expected = expected_lp_midpoint(diag, 2.0, options.resolution);
    if (is_square(n)) {
      const Partition jit = jittered_partition(static_cast<int>(std::lround(std::sqrt(n))), 2);
      const auto je = expected_lp_empirical(jit, 2.0, eo);
      r.has_jittered = true;
      r.jit_mean = je.value;
      r.jit_se = je.error_estimate;
      if (options.resolution > 0) r.jit_expected = expected_lp_midpoint(jit, 2.0, options.resolution);
    }
    rows.push_back(r);
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "n,mc,vertical,equivolume_diag_mean,equivolume_diag_se,equivolume_diag_expected,jittered_mean,jittered_se,"
        "jittered_expected\n";
  auto f = [](double x) { return format_double17(x); };
  for (const auto& r : rows) {
    os << r.n << ',' << f(r.mc) << ',' << f(r.vertical) << ',' << f(r.diag_mean) << ',' << f(r.diag_se) << ','
       << (r.diag_expected > 0 ? f(r.diag_expected) : "") << ',';
    if (r.has_jittered) {
      os << f(r.jit_mean) << ',' << f(r.jit_se) << ',' << (r.jit_expected > 0 ? f(r.jit_expected) : "");
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

std::vector<Table2Row> reproduce_table2(const Table2Options& options) {
  if (options.runs < 1) throw std::invalid_argument("reproduce_table2: need at least one run");
  struct Config {
    int dim, n;
  };
  const Config configs[] = {{2, 100}, {2, 1024}, {3, 125}, {3, 1000}, {5, 1024}};
  std::vector<Table2Row> rows;

  for (const auto& c : configs) {
    std::vector<std::string> families{"mc", "vertical"};
    if (c.dim == 2) families.push_back("equivolume_diag");
    families.push_back("jittered");

    for (const auto& fam : families) {
      Table2Row row;
      row.dim = c.dim;
      row.n = c.n;
      row.family = fam;
      const int g = c.dim == 2 ? 0 : (c.dim == 3 ? options.grid_d3 : options.grid_d5);
      row.method = c.dim == 2 ? "exact" : "approximate (grid)";
      row.resolution = g;

      std::optional<Partition> part;
      if (fam == "vertical") part = vertical_partition(c.n, c.dim);
      if (fam == "equivolume_diag") part = equivolume_diag_partition(c.n);
      if (fam == "jittered") part = jittered_partition(perfect_root(c.n, c.dim), c.dim);

      std::vector<double> values(static_cast<size_t>(options.runs));
      std::vector<char> dominated(static_cast<size_t>(options.runs), 1);
#pragma omp parallel for schedule(dynamic)
      for (int r = 0; r < options.runs; ++r) {
        const auto rep = static_cast<std::uint64_t>(r);
        const PointSet ps = part ? sample_stratified(*part, SeedSpec{options.seed, Purpose::stratified, rep})
                                 : sample_mc(c.n, c.dim, SeedSpec{options.seed, Purpose::monte_carlo, rep});
        if (c.dim == 2) {
          const double exact = star_disc_exact_2d(ps).value;
          values[static_cast<size_t>(r)] = exact;
          StarGridOptions go;
          go.resolution = 64;
          go.augment = Augment::never;
          dominated[static_cast<size_t>(r)] = star_disc_grid(ps, go).value <= exact;
        } else {
          StarGridOptions go;
          go.resolution = g;
          values[static_cast<size_t>(r)] = star_disc_grid(ps, go).value;
        }
      }
      const auto ms = mean_se(values);
      row.mean = ms.mean;
      row.se = ms.se;
      for (char d : dominated) row.grid_dominated = row.grid_dominated && d;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::ostringstream os;
  os << "d,n,family,mean,se,method,resolution\n";
  for (const auto& r : rows) {
    os << r.dim << ',' << r.n << ',' << r.family << ',' << format_double17(r.mean) << ',' << format_double17(r.se)
       << ",\"" << r.method << "\"," << r.resolution << '\n';
  }
  return os.str();
}

}  // namespace strata
