// bergman_lab: sweeps, self-checks and plot data for the constant-curvature
// Bergman density model.
//
//   bergman_lab sweep   --rho -2 --m-range 100..10000 --points 5 --out sweep.csv
//   bergman_lab verify  [--eta smooth] [--rel-tol 1e-4]
//   bergman_lab cp1     --m 3 --samples 20
//   bergman_lab moments --rho 0 --m-range 100,1000 --p-max 3
//   bergman_lab gram    --rho 0 --m-range 50 --degrees 2,3 --out gram.json
//   bergman_lab gram    --in gram.json

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bergman/commands.hpp"
#include "bergman/errors.hpp"
#include "bergman/run_config.hpp"

int main(int argc, char** argv) {
  using namespace bergman;

  CLI::App app{"Bergman density laboratory for constant-curvature surface models"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string m_range = "100..10000";
  int points = 5;
  std::string degrees;
  long cp1_m = 3;
  int samples = 20;
  int p_max = 2;
  std::string in_path;
  std::string eta_name = "c1";
  std::string format_name = "csv";

  const std::map<std::string, CutoffKind> eta_names{{"c1", CutoffKind::piecewise_quadratic},
                                                    {"smooth", CutoffKind::smooth}};
  const std::map<std::string, OutputFormat> format_names{{"csv", OutputFormat::csv},
                                                         {"json", OutputFormat::json}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rho", cfg.rho, "constant scalar curvature")->capture_default_str();
    sub->add_option("--m-range", m_range, "lo..hi (log-spaced), a,b,c or a single m")
        ->capture_default_str();
    sub->add_option("--points", points, "points in a log-spaced m range")->capture_default_str();
    sub->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance")->capture_default_str();
    sub->add_option("--budget-c", cfg.budget_C, "constant C of the C exp(-(log m)^2/8) budget")
        ->capture_default_str();
    sub->add_option("--eta", eta_name, "cut-off profile: c1 or smooth")
        ->check(CLI::IsMember(eta_names))
        ->capture_default_str();
    sub->add_option("--format", format_name, "report format: csv or json")
        ->check(CLI::IsMember(format_names))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "report path (default: standard output)");
    sub->add_option("--seed", cfg.seed, "seed for sampled points")->capture_default_str();
    sub->add_option("--radius-cap", cfg.radius_cap, "cap on the chart radius (injectivity radius)");
    sub->add_option("--degrees", degrees, "extra V-block monomial degrees, e.g. 2,3");
  };

  auto* sweep = app.add_subcommand("sweep", "density remainder sweep over m");
  auto* verify = app.add_subcommand("verify", "run every self-check suite");
  auto* cp1 = app.add_subcommand("cp1", "exact sphere-model density at sampled points");
  auto* moments = app.add_subcommand("moments", "radial moments lambda_p^-2 and closed forms");
  auto* gram = app.add_subcommand("gram", "truncated Gram matrix and I_00 by three routes");
  for (auto* sub : {sweep, verify, cp1, moments, gram}) add_common(sub);
  cp1->add_option("--m", cp1_m, "tensor power")->capture_default_str();
  cp1->add_option("--samples", samples, "number of sample points")->capture_default_str();
  moments->add_option("--p-max", p_max, "largest monomial degree")->capture_default_str();
  gram->add_option("--in", in_path, "read a Gram JSON file instead of assembling one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other parse error is invalid input.
    return app.exit(e) == 0 ? 0 : 2;
  }

  cfg.eta = eta_names.at(eta_name);
  cfg.format = format_names.at(format_name);
  try {
    cfg.m_list = parse_m_range(m_range, points);
    cfg.v_degrees = parse_int_list(degrees);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (*sweep) return cmd_sweep(cfg, std::cout, std::cerr);
  if (*verify) return cmd_verify(cfg, std::cout, std::cerr);
  if (*cp1) return cmd_cp1(cfg, cp1_m, samples, std::cout, std::cerr);
  if (*moments) return cmd_moments(cfg, p_max, std::cout, std::cerr);
  return cmd_gram(cfg, in_path, std::cout, std::cerr);
}
