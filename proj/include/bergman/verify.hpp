#pragma once
// Self-check suites run by `bergman_lab verify`. Each suite reports pass/fail
// with the observed margin; `flagged` marks a pass that used a relaxed,
// documented bound (the smooth cut-off's curvature bound of 24).

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/cutoff_weight.hpp"

namespace bergman {

struct SuiteResult {
  std::string name;
  bool pass = false;
  bool flagged = false;
  std::string detail;
};

struct VerifyOptions {
  double rho = -2.0;
  double rel_tol = 1e-12;
  CutoffKind eta = CutoffKind::piecewise_quadratic;
  std::uint64_t seed = 20240601;
};

SuiteResult verify_geometry_residuals(const VerifyOptions& opt);
SuiteResult verify_cutoff_bounds(const VerifyOptions& opt);
SuiteResult verify_psi_hessian(const VerifyOptions& opt);
SuiteResult verify_quadrature_closed_form(const VerifyOptions& opt);
SuiteResult verify_moment_symmetry(const VerifyOptions& opt);
SuiteResult verify_schur_routes(const VerifyOptions& opt);
SuiteResult verify_cp1_constancy(const VerifyOptions& opt);

std::vector<SuiteResult> run_verification(const VerifyOptions& opt);

} // namespace bergman
