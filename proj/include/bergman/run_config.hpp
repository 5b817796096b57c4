#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bergman/cutoff_weight.hpp"

namespace bergman {

enum class OutputFormat { csv, json };

struct RunConfig {
  double rho = -2.0;
  std::vector<long> m_list;
  double rel_tol = 1e-12;
  double budget_C = 1.0;
  CutoffKind eta = CutoffKind::piecewise_quadratic;
  OutputFormat format = OutputFormat::csv;
  std::string out;            // empty or "-" means standard output
  std::uint64_t seed = 20240601;
  double radius_cap = std::numeric_limits<double>::infinity();
  std::vector<int> v_degrees; // extra V-block degrees for the Gram matrix

  // Throws DomainError: non-finite rho, rel_tol outside (0, 1e-4],
  // negative budget.
  void validate_common() const;
  // validate_common plus an m list that is nonempty ("empty sweep") and
  // strictly ascending.
  void validate() const;
};

// "lo..hi" or "lo:hi" gives `points` log-spaced integers (rounded, duplicates
// dropped); "a,b,c" an explicit list; a single integer a one-point list.
std::vector<long> parse_m_range(const std::string& spec, int points);

std::vector<int> parse_int_list(const std::string& spec);

} // namespace bergman
