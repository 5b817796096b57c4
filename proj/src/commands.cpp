#include "bergman/commands.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>

#include <json.hpp>

#include "bergman/density_expansion.hpp"
#include "bergman/errors.hpp"
#include "bergman/gram_schur.hpp"
#include "bergman/radial_quadrature.hpp"
#include "bergman/report_io.hpp"
#include "bergman/verify.hpp"

namespace bergman {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_invalid = 2;
constexpr int exit_numeric = 3;

bool to_console(const RunConfig& cfg) { return cfg.out.empty() || cfg.out == "-"; }

// Report sink: the named file, or `console` for "-"/empty.
class ReportSink {
public:
  ReportSink(const RunConfig& cfg, std::ostream& console) : console_(console) {
    if (!to_console(cfg)) {
      file_.emplace(cfg.out, std::ios::binary | std::ios::trunc);
      if (!*file_) throw DomainError("cannot open output file '" + cfg.out + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : console_; }

private:
  std::ostream& console_;
  std::optional<std::ofstream> file_;
};

std::ostream& summary_stream(const RunConfig& cfg, std::ostream& console, std::ostream& diag) {
  return to_console(cfg) ? diag : console;
}

QuadratureConfig<double> quadrature(const RunConfig& cfg) { return {cfg.rel_tol, 60}; }

} // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& console, std::ostream& diag) {
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }

  std::optional<ReportSink> sink;
  try {
    sink.emplace(cfg, console);
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  auto& out = sink->stream();
  auto& summary = summary_stream(cfg, console, diag);

  SweepResult<double> result;
  std::optional<std::pair<long, std::string>> failure;
  try {
    result = remainder_sweep(cfg.rho, cfg.m_list, cfg.budget_C, cfg.v_degrees, quadrature(cfg),
                             cfg.radius_cap);
  } catch (const SweepFailure<double>& e) {
    result = e.partial();
    failure.emplace(e.failed_m(), e.what());
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }

  if (cfg.format == OutputFormat::json) {
    auto j = to_json(result);
    if (failure) j["failure"] = {{"m", failure->first}, {"reason", failure->second}};
    out << j.dump(2) << '\n';
  } else {
    write_sweep_csv(out, result);
    if (failure) write_failure_row(out, failure->first, failure->second);
  }
  out.flush();

  if (failure) {
    diag << "error: sweep failed at m=" << failure->first << ": " << failure->second << '\n';
    return exit_numeric;
  }
  summary << "fitted_C=" << format_number(result.fitted_C)
          << " envelope=" << (result.envelope_pass ? "PASS" : "FAIL")
          << " points=" << result.reports.size() << '\n';
  return result.envelope_pass ? exit_ok : exit_check_failed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& console, std::ostream& diag) {
  try {
    cfg.validate_common();
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  const auto results = run_verification({cfg.rho, cfg.rel_tol, cfg.eta, cfg.seed});
  std::string failed;
  for (const auto& r : results) {
    console << (r.pass ? "PASS" : "FAIL") << (r.flagged ? " (flagged)" : "") << ' ' << r.name
            << ": " << r.detail << '\n';
    if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.name;
  }
  if (!failed.empty()) {
    console << "failing suites: " << failed << '\n';
    return exit_check_failed;
  }
  console << "all suites passed\n";
  return exit_ok;
}

int cmd_cp1(const RunConfig& cfg, long m, int samples, std::ostream& console, std::ostream& diag) {
  if (m < 1 || samples < 1) {
    diag << "error: cp1 needs m >= 1 and samples >= 1\n";
    return exit_invalid;
  }
  std::optional<ReportSink> sink;
  try {
    sink.emplace(cfg, console);
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  auto& out = sink->stream();

  // The first sample is the centre z = 0; the rest are seeded draws in |z| < 2.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == OutputFormat::csv) out << "re,im,density,deviation\n";
  double max_dev = 0.0;
  try {
    for (int i = 0; i < samples; ++i) {
      std::complex<double> z(0.0, 0.0);
      if (i > 0) z = std::polar(2.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      const auto d = cp1_density(m, z);
      const double dev = std::abs(d.summed - d.analytic);
      max_dev = std::max(max_dev, dev / d.analytic);
      if (cfg.format == OutputFormat::csv)
        out << format_number(z.real()) << ',' << format_number(z.imag()) << ','
            << format_number(d.summed) << ',' << format_number(dev) << '\n';
      else
        rows.push_back({{"re", z.real()}, {"im", z.imag()}, {"density", d.summed}, {"deviation", dev}});
    }
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_numeric;
  }
  if (cfg.format == OutputFormat::json)
    out << nlohmann::json{{"m", m}, {"samples", rows}, {"max_rel_deviation", max_dev}}.dump(2) << '\n';
  out.flush();
  summary_stream(cfg, console, diag) << "m=" << m << " max_rel_deviation=" << format_number(max_dev)
                                     << '\n';
  return max_dev <= 1e-9 ? exit_ok : exit_check_failed;
}

int cmd_moments(const RunConfig& cfg, int p_max, std::ostream& console, std::ostream& diag) {
  try {
    cfg.validate();
    if (p_max < 0) throw DomainError("--p-max must be nonnegative");
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  std::optional<ReportSink> sink;
  try {
    sink.emplace(cfg, console);
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  auto& out = sink->stream();

  const ModelGeometry<double> geom(cfg.rho, cfg.radius_cap);
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == OutputFormat::csv) out << "m,p,radius,value,abs_err,closed_form,rel_gap\n";
  try {
    for (long m : cfg.m_list) {
      const double R = truncation_radius<double>(m);
      for (int p = 0; p <= p_max; ++p) {
        const auto mom = lambda_inv_sq(geom, m, p, R, quadrature(cfg));
        std::optional<double> closed;
        if (p == 0) closed = lambda0_closed_form(geom, m);
        const double gap = closed ? std::abs(mom.value - *closed) / *closed : 0.0;
        if (cfg.format == OutputFormat::csv) {
          out << m << ',' << p << ',' << format_number(R) << ',' << format_number(mom.value) << ','
              << format_number(mom.abs_err) << ',' << (closed ? format_number(*closed) : "") << ','
              << (closed ? format_number(gap) : "") << '\n';
        } else {
          nlohmann::json row{{"m", m}, {"p", p}, {"radius", R}, {"value", mom.value},
                             {"abs_err", mom.abs_err}};
          if (closed) {
            row["closed_form"] = *closed;
            row["rel_gap"] = gap;
          }
          rows.push_back(row);
        }
      }
    }
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const QuadratureFailure& e) {
    diag << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate()) << ")\n";
    return exit_numeric;
  }
  if (cfg.format == OutputFormat::json) out << rows.dump(2) << '\n';
  return exit_ok;
}

int cmd_gram(const RunConfig& cfg, const std::string& in_path, std::ostream& console,
             std::ostream& diag) {
  BorderedGram<double> G;
  try {
    if (!in_path.empty()) {
      std::ifstream in(in_path);
      if (!in) throw DomainError("cannot open '" + in_path + "'");
      G = gram_from_json(nlohmann::json::parse(in));
    } else {
      cfg.validate();
      const long m = cfg.m_list.front();
      const ModelGeometry<double> geom(cfg.rho, cfg.radius_cap);
      G = assemble_truncated_gram(geom, m, cfg.v_degrees,
                                  ErrorBudget<double>::canonical(cfg.budget_C, m), quadrature(cfg));
      ReportSink sink(cfg, console);
      sink.stream() << gram_to_json(G).dump(2) << '\n';
    }
  } catch (const nlohmann::json::exception& e) {
    diag << "error: malformed gram JSON: " << e.what() << '\n';
    return exit_invalid;
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const QuadratureFailure& e) {
    diag << "error: " << e.what() << '\n';
    return exit_numeric;
  }

  try {
    const auto schur = schur_i00(G);
    const double oracle = inverse00_oracle(G);
    const double ortho = orthonormalize_i00(G);
    auto& summary = (in_path.empty() && to_console(cfg)) ? diag : console;
    summary << "dim=" << G.dim() << " schur_i00=" << format_number(schur.value)
            << " inverse00=" << format_number(oracle) << " orthonormalize_i00=" << format_number(ortho)
            << " interval=[" << format_number(schur.lo) << ", " << format_number(schur.hi) << "]\n";
  } catch (const std::runtime_error& e) {
    diag << "error: " << e.what() << '\n';
    return exit_numeric;
  }
  return exit_ok;
}

} // namespace bergman
