#include "bergman/report_io.hpp"

#include <cstdio>
#include <ostream>

#include "bergman/errors.hpp"

namespace bergman {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv_header(std::ostream& os) { os << sweep_csv_header << '\n'; }

void write_report_csv_row(std::ostream& os, const DensityReport<double>& r) {
  os << r.m << ',' << format_number(r.rho) << ',' << format_number(r.density) << ','
     << format_number(r.lo) << ',' << format_number(r.hi) << ',' << format_number(r.reference)
     << ',' << format_number(r.remainder) << '\n';
}

void write_sweep_csv(std::ostream& os, const SweepResult<double>& s) {
  write_sweep_csv_header(os);
  for (const auto& r : s.reports) write_report_csv_row(os, r);
}

void write_failure_row(std::ostream& os, long m, const std::string& reason) {
  std::string clean = reason;
  for (char& c : clean)
    if (c == ',' || c == '\n') c = ';';
  os << "FAILED," << m << ',' << clean << '\n';
}

nlohmann::json to_json(const DensityReport<double>& r) {
  return {{"m", r.m},           {"rho", r.rho},         {"density", r.density},
          {"lo", r.lo},         {"hi", r.hi},           {"reference", r.reference},
          {"remainder", r.remainder}, {"budget_C", r.budget_C}, {"i00", r.i00},
          {"lambda0_sq", r.lambda0_sq}};
}

nlohmann::json to_json(const SweepResult<double>& s) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  return {{"reports", reports},
          {"fitted_C", s.fitted_C},
          {"envelope_pass", s.envelope_pass},
          {"decay_violations", s.decay_violations}};
}

nlohmann::json gram_to_json(const BorderedGram<double>& G) {
  nlohmann::json entries = nlohmann::json::array();
  nlohmann::json budgets = nlohmann::json::array();
  for (Eigen::Index i = 0; i < G.dim(); ++i)
    for (Eigen::Index j = 0; j < G.dim(); ++j) {
      entries.push_back({G.entries(i, j).real(), G.entries(i, j).imag()});
      budgets.push_back(G.budgets(i, j));
    }
  return {{"dim", G.dim()}, {"entries", entries}, {"budgets", budgets}};
}

BorderedGram<double> gram_from_json(const nlohmann::json& j) {
  const auto n = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (n < 2 || entries.size() != static_cast<std::size_t>(n * n))
    throw DomainError("gram JSON: entries must hold dim*dim [re, im] pairs");
  BorderedGram<double> G;
  G.entries.resize(n, n);
  G.budgets.setZero(n, n);
  const bool has_budgets = j.contains("budgets");
  if (has_budgets && j.at("budgets").size() != entries.size())
    throw DomainError("gram JSON: budgets must hold dim*dim values");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(i * n + k);
      const auto& pair = entries.at(idx);
      G.entries(i, k) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
      if (has_budgets) G.budgets(i, k) = j.at("budgets").at(idx).get<double>();
    }
  G.validate();
  return G;
}

} // namespace bergman
