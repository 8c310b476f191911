// gepi — minimum entropy of sums on finite abelian groups.
//
// Subcommands:
//   eval    closed-form f values for 2-groups
//   oracle  closed form vs numeric minimizer on a grid, CSV
//   region  broadcast / helper rate-region boundaries, CSV or JSON
//   check   MGL, convexity and appendix verification suites, JSON
//
// Exit codes: 0 pass, 1 violation found, 2 usage or domain error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gepi/applications.hpp"
#include "gepi/appendix.hpp"
#include "gepi/closed_form.hpp"
#include "gepi/entropy.hpp"
#include "gepi/error.hpp"
#include "gepi/io.hpp"
#include "gepi/oracle.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct OutputOptions {
  std::string path;  // empty = stdout
  std::string format = "csv";
  std::string unit = "nats";

  double scale() const { return unit == "bits" ? 1.0 / gepi::kLn2 : 1.0; }
};

void write_output(const OutputOptions& opt, const std::string& text) {
  if (opt.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.path, std::ios::binary);
  if (!out) throw gepi::Error("cannot open output file: " + opt.path);
  out << text;
}

int thread_count() {
  if (const char* env = std::getenv("GEPI_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::vector<double> parse_xs(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) xs.push_back(std::stod(item));
  }
  if (xs.empty()) throw gepi::DomainError("--xs: no values given");
  return xs;
}

std::vector<double> uniform_grid(double top, int resolution) {
  std::vector<double> grid(static_cast<std::size_t>(resolution) + 1);
  for (int i = 0; i <= resolution; ++i) {
    grid[static_cast<std::size_t>(i)] = top * i / resolution;
  }
  return grid;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gepi::Error("cannot open spec file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int cmd_eval(const std::string& group_text, std::optional<double> x,
             std::optional<double> y, const std::string& xs_text,
             const OutputOptions& out) {
  const auto group = gepi::parse_group_descriptor(group_text);
  const double scale = out.scale();
  double value;
  if (!xs_text.empty()) {
    const auto xs = parse_xs(xs_text);
    value = gepi::f_gk(group.exponent(), xs);
  } else {
    if (!x || !y) throw gepi::DomainError("eval: need --x and --y (or --xs)");
    value = gepi::f_group(group, *x, *y);
  }
  write_output(out, gepi::format_number(value * scale) + "\n");
  return kExitPass;
}

int cmd_oracle(const std::string& group_text, int grid, gepi::MinimizationConfig cfg,
               const OutputOptions& out) {
  const auto group = gepi::parse_group_descriptor(group_text);
  const double top = std::log(static_cast<double>(group.order()));
  const auto axis = uniform_grid(top, grid);
  const bool closed = group.is_two_group();
  const double scale = out.scale();

  struct Row {
    double x, y, closed, numeric, gap;
  };
  const std::size_t total = axis.size() * axis.size();
  std::vector<Row> rows(total);

  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const double x = axis[t / axis.size()];
      const double y = axis[t % axis.size()];
      Row row{x, y, 0.0, 0.0, 0.0};
      row.numeric = gepi::min_sum_entropy(group, x, y, cfg).value;
      if (closed) {
        row.closed = gepi::f_group(group, x, y);
        row.gap = row.numeric - row.closed;
      }
      rows[t] = row;
    }
  };

  // Values are independent per grid point, so the thread count changes only
  // wall time, never the output bytes.
  const int threads = thread_count();
  if (threads <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      const std::size_t begin = std::min(total, static_cast<std::size_t>(i) * chunk);
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "x,y,closed_form,numeric,gap\n";
  double max_gap = 0.0;
  for (const auto& row : rows) {
    csv << gepi::format_number(row.x * scale) << ","
        << gepi::format_number(row.y * scale) << ",";
    if (closed) {
      csv << gepi::format_number(row.closed * scale) << ","
          << gepi::format_number(row.numeric * scale) << ","
          << gepi::format_number(row.gap * scale) << "\n";
      max_gap = std::max(max_gap, std::abs(row.gap));
    } else {
      csv << "nan," << gepi::format_number(row.numeric * scale) << ",nan\n";
    }
  }
  csv << "# max_abs_gap = " << gepi::format_number(max_gap * scale) << "\n";
  write_output(out, csv.str());
  return kExitPass;
}

int cmd_region(const std::string& kind, const std::string& spec_path, int alphas,
               const OutputOptions& out) {
  const auto spec = load_json_file(spec_path);
  std::vector<double> grid(static_cast<std::size_t>(alphas));
  for (int i = 0; i < alphas; ++i) {
    grid[static_cast<std::size_t>(i)] = alphas == 1 ? 0.0 : 0.5 * i / (alphas - 1);
  }

  gepi::RateRegionBoundary boundary;
  if (kind == "broadcast") {
    boundary = gepi::broadcast_region(gepi::broadcast_spec_from_json(spec), grid);
  } else if (kind == "broadcast-gaussian") {
    boundary = gepi::broadcast_region_gaussian(
        gepi::distribution_from_json(spec.at("p_z1")),
        gepi::distribution_from_json(spec.at("p_z2")), grid);
  } else if (kind == "helper") {
    boundary = gepi::helper_region(gepi::distribution_from_json(spec.at("p_z")), grid);
  } else {
    throw gepi::DomainError("region: unknown kind '" + kind + "'");
  }

  if (out.format == "json") {
    write_output(out, gepi::region_to_json(boundary, out.scale()).dump(2) + "\n");
  } else {
    write_output(out, gepi::region_to_csv(boundary, out.scale()));
  }
  return kExitPass;
}

int cmd_check(const std::string& kind, const std::string& group_text, int trials,
              int resolution, double tolerance, gepi::MinimizationConfig cfg,
              const OutputOptions& out) {
  nlohmann::json report;
  bool pass = true;

  if (kind == "mgl-scalar") {
    const gepi::FiniteAbelianGroup groups[] = {gepi::FiniteAbelianGroup::cyclic(4),
                                               gepi::FiniteAbelianGroup::cyclic(8),
                                               gepi::FiniteAbelianGroup({2, 4})};
    const auto suite = gepi::run_scalar_mgl_suite(groups, trials, cfg.seed);
    report = gepi::mgl_report_to_json(suite);
    report["kind"] = "mgl-scalar";
    pass = suite.violations == 0;
  } else if (kind == "mgl-vector") {
    const auto group =
        gepi::parse_group_descriptor(group_text.empty() ? "z4" : group_text);
    const auto suite = gepi::run_vector_mgl_suite(group, 2, trials, cfg.seed);
    report = gepi::mgl_report_to_json(suite);
    report["kind"] = "mgl-vector";
    pass = suite.violations == 0;
  } else if (kind == "convexity") {
    const auto group =
        gepi::parse_group_descriptor(group_text.empty() ? "z3" : group_text);
    const double top = std::log(static_cast<double>(group.order()));
    const auto axis = uniform_grid(top, resolution);
    const double tol =
        tolerance > 0.0 ? tolerance : (group.is_two_group() ? 1e-6 : 1e-4);
    const auto scan = gepi::convexity_scan(group, axis, axis, cfg, tol);
    report = gepi::convexity_report_to_json(scan);
    report["kind"] = "convexity";
    pass = scan.pass();
  } else if (kind == "lemmas") {
    report["kind"] = "lemmas";
    report["claims"] = nlohmann::json::array();
    for (gepi::ClaimId id :
         {gepi::ClaimId::np, gepi::ClaimId::lp, gepi::ClaimId::Fp, gepi::ClaimId::p1p2,
          gepi::ClaimId::dfdx_ray, gepi::ClaimId::poly_bound_identity}) {
      const auto claim = gepi::verify_claim(id, std::max(100, resolution));
      report["claims"].push_back(gepi::claim_report_to_json(claim));
      pass = pass && claim.pass;
    }
  } else {
    throw gepi::DomainError("check: unknown kind '" + kind + "'");
  }

  report["pass"] = pass;
  write_output(out, report.dump(2) + "\n");
  return pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum entropy of sums on finite abelian groups"};
  app.require_subcommand(1);

  OutputOptions out;
  gepi::MinimizationConfig cfg;

  const auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--out", out.path, "output file (default stdout)");
    sub->add_option("--format", out.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--unit", out.unit, "nats|bits (rescales output only)")
        ->check(CLI::IsMember({"nats", "bits"}));
  };
  const auto add_config_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--restarts", cfg.restarts, "random restarts");
    sub->add_option("--max-iterations", cfg.max_iterations, "descent iteration cap");
    sub->add_option("--entropy-tolerance", cfg.entropy_tolerance, "marginal slack");
  };

  std::string group_text;
  std::optional<double> x, y;
  std::string xs_text;
  auto* eval = app.add_subcommand("eval", "closed-form f values");
  eval->add_option("--group", group_text, "group descriptor, e.g. z4 or z2xz4")
      ->required();
  eval->add_option("--x", x, "first entropy (nats)");
  eval->add_option("--y", y, "second entropy (nats)");
  eval->add_option("--xs", xs_text, "comma-separated entropies for the k-fold value");
  add_output_flags(eval);

  int grid = 25;
  auto* oracle = app.add_subcommand("oracle", "closed form vs numeric minimizer");
  oracle->add_option("--group", group_text, "group descriptor")->required();
  oracle->add_option("--grid", grid, "grid resolution per axis")
      ->check(CLI::PositiveNumber);
  add_config_flags(oracle);
  add_output_flags(oracle);

  std::string kind, spec_path;
  int alphas = 201;
  auto* region = app.add_subcommand("region", "rate-region boundaries");
  region->add_option("--kind", kind, "broadcast|broadcast-gaussian|helper")->required();
  region->add_option("--spec", spec_path, "JSON spec file")->required();
  region->add_option("--alphas", alphas, "sweep size")->check(CLI::PositiveNumber);
  add_output_flags(region);

  int trials = 10000, resolution = 40;
  double tolerance = 0.0;
  auto* check = app.add_subcommand("check", "verification suites");
  check->add_option("--kind", kind, "mgl-scalar|mgl-vector|convexity|lemmas")->required();
  check->add_option("--group", group_text, "group descriptor (convexity, mgl-vector)");
  check->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  check->add_option("--resolution", resolution, "grid resolution")
      ->check(CLI::PositiveNumber);
  check->add_option("--tolerance", tolerance, "violation tolerance (0 = default)");
  add_config_flags(check);
  add_output_flags(check);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(group_text, x, y, xs_text, out);
    if (oracle->parsed()) return cmd_oracle(group_text, grid, cfg, out);
    if (region->parsed()) return cmd_region(kind, spec_path, alphas, out);
    if (check->parsed())
      return cmd_check(kind, group_text, trials, resolution, tolerance, cfg, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
