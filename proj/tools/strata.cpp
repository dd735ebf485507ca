// Command-line front end: sampling, discrepancy, expected discrepancy,
// optimisation, scans, table reproduction and the verification suites.

#include "strata/closed_forms.hpp"
#include "strata/discrepancy.hpp"
#include "strata/expectation.hpp"
#include "strata/io.hpp"
#include "strata/optimize.hpp"
#include "strata/tables.hpp"
#include "strata/uniformity.hpp"
#include "strata/verify.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace strata;

namespace {

int configure_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("STRATA_THREADS")) n = std::atoi(env);
  }
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
  return omp_get_max_threads();
#else
  (void)n;
  return 1;
#endif
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(item));
    } else {
      const int lo = std::stoi(item.substr(0, dots)), hi = std::stoi(item.substr(dots + 2));
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    }
  }
  return out;
}

// Output either to a file or to stdout.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    os = &file;
  }
  std::ostream& operator*() { return *os; }
};

struct PartitionArgs {
  std::string file;
  std::string family;
  int n = 0;
  int dim = 2;
  std::vector<double> v;

  void add(CLI::App* app) {
    app->add_option("--partition", file, "partition JSON file");
    app->add_option("--family", family, "diag|equivolume_diag|equidistant_diag|vertical|jittered");
    app->add_option("--n", n, "number of strata");
    app->add_option("--dim", dim, "dimension");
    app->add_option("--v", v, "cut distances for the diag family");
  }
  PartitionSpec spec() const {
    if (!file.empty()) return read_partition_spec(file);
    if (family.empty()) throw std::invalid_argument("give --partition or --family");
    return PartitionSpec{family_from_string(family), dim, n, v};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratified sampling and discrepancy toolkit"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  int threads = 0;
  std::string manifest_path;
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (default: STRATA_THREADS or OMP_NUM_THREADS)");
  app.add_option("--manifest", manifest_path, "write a run manifest JSON here");
  std::vector<std::string> outputs;

  // sample
  auto* sample = app.add_subcommand("sample", "draw stratified or Monte Carlo point sets");
  PartitionArgs sample_part;
  sample_part.add(sample);
  int replicates = 1;
  std::string sample_out;
  bool rejection = false;
  sample->add_option("--replicates", replicates, "number of point sets");
  sample->add_option("--out", sample_out, "output directory (stdout if omitted, first replicate only)");
  sample->add_flag("--rejection", rejection, "sample diagonal slices by rejection");
  sample->add_option("--seed", seed, "master seed");

  // disc
  auto* disc = app.add_subcommand("disc", "discrepancy of a point set");
  std::string disc_kind = "l2", points_file;
  int disc_grid = 0;
  double disc_p = 2.0;
  disc->add_option("kind", disc_kind, "l2|lp|star")->check(CLI::IsMember({"l2", "lp", "star"}));
  disc->add_option("--points", points_file, "point CSV")->required();
  disc->add_option("--grid", disc_grid, "quadrature / lattice resolution");
  disc->add_option("--p", disc_p, "exponent for lp");
  disc->add_option("--seed", seed, "master seed");

  // expect
  auto* expect = app.add_subcommand("expect", "expected L_p discrepancy of a partition");
  PartitionArgs expect_part;
  expect_part.add(expect);
  double expect_p = 2.0;
  int expect_grid = 1024, empirical = 0;
  expect->add_option("--p", expect_p, "exponent");
  expect->add_option("--grid", expect_grid, "quadrature resolution G");
  expect->add_option("--empirical", empirical, "replicates for the Monte Carlo estimate instead");
  expect->add_option("--seed", seed, "master seed");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "minimise expected discrepancy over the diagonal family");
  int opt_n = 3;
  double opt_p = 2.0;
  OptimizeOptions opt;
  std::vector<double> opt_start;
  std::string opt_out;
  optimize->add_option("--n", opt_n, "number of strata");
  optimize->add_option("--p", opt_p, "exponent");
  optimize->add_option("--grid", opt.resolution, "quadrature resolution for the final polish");
  optimize->add_option("--restarts", opt.restarts, "multi-start count");
  optimize->add_option("--start", opt_start, "additional start vector v");
  optimize->add_option("--out", opt_out, "result JSON");
  optimize->add_option("--seed", seed, "master seed");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "curve data for the one- and two-cut families");
  std::string example = "3", scan_out;
  ScanOptions so;
  scan_cmd->add_option("--example", example, "2|3|n3")->check(CLI::IsMember({"2", "3", "n3"}));
  scan_cmd->add_option("--grid", so.resolution, "quadrature G for the geometry column (0: off)");
  scan_cmd->add_option("--steps", so.steps, "points per axis");
  scan_cmd->add_option("--a", so.fixed_a, "fixed A for the n3 curve");
  scan_cmd->add_option("--a-steps", so.a_steps, "n3: scan an A x B grid instead");
  scan_cmd->add_option("--out", scan_out, "CSV output");
  scan_cmd->add_option("--seed", seed, "master seed");

  // uniformity
  auto* unif = app.add_subcommand("uniformity", "uniform-distribution diagnostics over a family");
  std::string unif_family = "vertical", boxes_file, unif_ns = "2..64", unif_out;
  int unif_dim = 2, random_boxes = 10;
  unif->add_option("--family", unif_family, "partition family");
  unif->add_option("--dim", unif_dim, "dimension");
  unif->add_option("--boxes", boxes_file, "box CSV lo1..lod,hi1..hid");
  unif->add_option("--random-boxes", random_boxes, "random boxes when --boxes is not given");
  unif->add_option("--n", unif_ns, "N list, e.g. 2..256 or 4,16,64");
  unif->add_option("--out", unif_out, "CSV output");
  unif->add_option("--seed", seed, "master seed");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "regenerate the numerical tables");
  std::string which, repro_out;
  Table1Options t1;
  Table2Options t2;
  reproduce->add_option("table", which, "table1|table2")->required()->check(CLI::IsMember({"table1", "table2"}));
  reproduce->add_option("--replicates", t1.replicates, "table1 replicates");
  reproduce->add_option("--grid", t1.resolution, "table1 quadrature G (0: skip)");
  reproduce->add_option("--runs", t2.runs, "table2 runs");
  reproduce->add_option("--out", repro_out, "CSV output");
  reproduce->add_option("--seed", seed, "master seed");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  std::string suite = "all";
  verify_cmd->add_option("suite", suite, "suite name or all");
  verify_cmd->add_option("--seed", seed, "master seed");

  // closed
  auto* closed_cmd = app.add_subcommand("closed", "evaluate a printed closed form");
  std::string form;
  std::vector<double> params;
  closed_cmd->add_option("form", form, "mc|vertical|n2_convex|n2_diag|n2_diag_b|n3_main|n3_case2|n3_appendix")
      ->required();
  closed_cmd->add_option("params", params, "parameters")->required();

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  const int nthreads = configure_threads(threads);
  int status = 0;
  try {
    if (*sample) {
      std::optional<Partition> part;
      PointSet first;
      const bool mc = sample_part.family == "mc";
      if (!mc) part = build_partition(sample_part.spec());
      const auto method = rejection ? SliceMethod::rejection : SliceMethod::inverse_cdf;
      if (!sample_out.empty()) fs::create_directories(sample_out);
      for (int r = 0; r < (sample_out.empty() ? 1 : replicates); ++r) {
        const auto rep = static_cast<std::uint64_t>(r);
        const PointSet ps = mc ? sample_mc(sample_part.n, sample_part.dim, SeedSpec{seed, Purpose::monte_carlo, rep})
                               : sample_stratified(*part, SeedSpec{seed, Purpose::stratified, rep}, method);
        if (sample_out.empty()) {
          write_points_csv(std::cout, ps);
        } else {
          const auto path = (fs::path(sample_out) / ("points_" + std::to_string(r) + ".csv")).string();
          std::ofstream f(path);
          write_points_csv(f, ps);
          outputs.push_back(path);
        }
      }
    } else if (*disc) {
      const PointSet ps = read_points_csv(points_file);
      DiscrepancyResult r;
      if (disc_kind == "l2") {
        r = l2_warnock(ps);
      } else if (disc_kind == "lp") {
        r = lp_quadrature(ps, disc_p, disc_grid > 0 ? disc_grid : 1024);
      } else if (ps.dim() == 2 && ps.size() <= kStarExactMaxPoints && disc_grid == 0) {
        r = star_disc_exact_2d(ps);
      } else {
        StarGridOptions o;
        if (disc_grid > 0) o.resolution = disc_grid;
        r = star_disc_grid(ps, o);
      }
      std::cout << to_json(r).dump(2) << '\n';
    } else if (*expect) {
      const Partition part = build_partition(expect_part.spec());
      ExpectationResult r;
      if (empirical > 0) {
        r = expected_lp_empirical(part, expect_p, EmpiricalOptions{empirical, seed, std::min(expect_grid, 256)});
      } else {
        QuadratureOptions q;
        q.resolution = expect_grid;
        r = expected_lp(part, expect_p, q);
      }
      std::cout << to_json(r).dump(2) << '\n';
    } else if (*optimize) {
      opt.seed = seed;
      if (!opt_start.empty()) opt.start = opt_start;
      const auto r = minimize_family(opt_n, opt_p, opt);
      Sink out(opt_out);
      *out << to_json(r).dump(2) << '\n';
      if (!opt_out.empty()) outputs.push_back(opt_out);
    } else if (*scan_cmd) {
      so.example = example == "2" ? ScanExample::convex2 : example == "3" ? ScanExample::diag2 : ScanExample::diag3;
      Sink out(scan_out);
      write_csv(*out, scan(so));
      if (!scan_out.empty()) outputs.push_back(scan_out);
    } else if (*unif) {
      std::vector<AxisBox> boxes;
      if (!boxes_file.empty()) {
        boxes = read_boxes_csv(boxes_file);
      } else {
        for (int k = 0; k < random_boxes; ++k) {
          CounterRng rng(SeedSpec{seed, Purpose::test, 0}, static_cast<std::uint64_t>(k));
          Vector a(unif_dim), b(unif_dim);
          for (int j = 0; j < unif_dim; ++j) {
            a[j] = rng.uniform();
            b[j] = rng.uniform();
          }
          boxes.push_back(AxisBox::make(a.cwiseMin(b), a.cwiseMax(b)));
        }
      }
      const auto rep = uniformity_sweep(family_from_string(unif_family), boxes, parse_counts(unif_ns), unif_dim);
      Sink out(unif_out);
      write_csv(*out, rep);
      if (!unif_out.empty()) outputs.push_back(unif_out);
    } else if (*reproduce) {
      Sink out(repro_out);
      if (which == "table1") {
        t1.seed = seed;
        *out << table1_csv(reproduce_table1(t1));
      } else {
        t2.seed = seed;
        *out << table2_csv(reproduce_table2(t2));
      }
      if (!repro_out.empty()) outputs.push_back(repro_out);
    } else if (*verify_cmd) {
      const auto rep = verify(suite, seed);
      for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
        std::cout << '\n';
      }
      for (const auto& n : rep.notes) std::cout << n;
      status = rep.passed() ? 0 : 1;
    } else if (*closed_cmd) {
      const double v = closed::evaluate(closed::form_from_string(form), params);
      std::cout << Json{{"form", form}, {"params", params}, {"value", v}}.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (!manifest_path.empty()) {
    RunManifest m;
    m.command = app.get_subcommands().front()->get_name();
    m.argv.assign(argv, argv + argc);
    m.seed = seed;
    m.version = library_version();
    m.outputs = outputs;
    m.threads = nthreads;
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream(manifest_path) << to_json(m).dump(2) << '\n';
  }
  return status;
}
