#include "bergman/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "bergman/density_expansion.hpp"
#include "bergman/gram_schur.hpp"
#include "bergman/model_geometry.hpp"
#include "bergman/radial_quadrature.hpp"

namespace bergman {

namespace {

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

std::vector<double> curvatures(double rho) {
  std::vector<double> out{-2.0, -1.0, 0.0, 2.0};
  if (std::find(out.begin(), out.end(), rho) == out.end()) out.push_back(rho);
  return out;
}

} // namespace

SuiteResult verify_geometry_residuals(const VerifyOptions& opt) {
  SuiteResult res{"geometry_residuals", false, false, {}};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0, worst_order_gap = 0.0;
  for (double rho : curvatures(opt.rho)) {
    const ModelGeometry<double> geom(rho);
    const double scale = std::isinf(geom.max_radius()) ? 1.0 : std::min(1.0, geom.max_radius());
    // rho > 0: stay where rho r^2 / 2 <= 1; past it g decays and dividing by g
    // inflates the stencil error.
    const double r_max = rho > 0.0   ? std::sqrt(2.0 / rho)
                         : rho < 0.0 ? 0.6 * geom.max_radius()
                                     : 1.5;
    const double h = 1e-3 * scale;
    const double tol = 1e-5 * std::max(1.0, std::abs(rho) / 2.0) / (scale * scale);
    double coarse = 0.0, fine = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double r = 0.02 * scale + (r_max - 0.02 * scale) * unit(rng);
      const auto z = std::polar(r, 2.0 * std::numbers::pi * unit(rng));
      const double e = std::max({std::abs(curvature_residual(geom, z, h)),
                                 std::abs(weight_residual(geom, z, h)),
                                 std::abs(polar_ode_residual(geom, r, h))});
      worst = std::max(worst, e / tol);
      coarse = std::max(coarse, std::abs(curvature_residual(geom, z, 10 * h)));
      fine = std::max(fine, std::abs(curvature_residual(geom, z, 5 * h)));
    }
    if (rho != 0.0) worst_order_gap = std::max(worst_order_gap, std::abs(std::log2(coarse / fine) - 2.0));
  }
  res.pass = worst <= 1.0 && worst_order_gap <= 0.3;
  res.detail = fmt("max residual/tol=%.3g, |observed order-2|=%.3g", worst, worst_order_gap);
  return res;
}

SuiteResult verify_cutoff_bounds(const VerifyOptions& opt) {
  SuiteResult res{"cutoff_bounds", false, false, {}};
  const CutoffProfile<double> eta(opt.eta);
  const int samples = 10000;
  double max_slope = 0.0, min_neg_slope = 0.0, max_curv = 0.0;
  bool monotone = true;
  double prev = 1.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 1.2 * (i + 0.5) / samples;
    const double v = eta.value(t);
    monotone = monotone && v <= prev + 1e-15;
    prev = v;
    if (eta.is_knot(t)) continue;
    max_slope = std::max(max_slope, -eta.slope(t));
    min_neg_slope = std::min(min_neg_slope, -eta.slope(t));
    max_curv = std::max(max_curv, std::abs(eta.curvature(t)));
  }
  const bool ends = eta.value(0.3) == 1.0 && eta.value(1.5) == 0.0;
  res.pass = ends && monotone && min_neg_slope >= 0.0 && max_slope <= eta.slope_bound() + 1e-9 &&
             max_curv <= eta.curvature_bound() + 1e-9;
  res.flagged = opt.eta == CutoffKind::smooth;
  res.detail = fmt("max -eta'=%.4g (bound 4), max |eta''|=%.4g (bound %.0f)", max_slope, max_curv,
                   eta.curvature_bound());
  if (res.flagged) res.detail += "; smooth profile uses the relaxed curvature bound 24";
  return res;
}

SuiteResult verify_psi_hessian(const VerifyOptions& opt) {
  SuiteResult res{"psi_hessian_bound", false, false, {}};
  const CutoffProfile<double> eta(opt.eta);
  const ModelGeometry<double> geom(opt.rho);
  res.pass = true;
  double worst_ratio = 0.0;
  for (auto [m, p_prime] : {std::pair{1000L, 2}, {10000L, 2}, {10000L, 3}}) {
    const WeightParams<double> params{1, p_prime, m};
    const auto check = psi_hessian_bound_check(params, eta, geom);
    res.pass = res.pass && check.pass;
    worst_ratio = std::max(worst_ratio, check.min_observed / check.bound);
  }
  res.detail = fmt("worst min_observed/bound=%.3g (must be <= 1)", worst_ratio);
  return res;
}

SuiteResult verify_quadrature_closed_form(const VerifyOptions& opt) {
  SuiteResult res{"quadrature_vs_closed_form", false, false, {}};
  const ModelGeometry<double> geom(opt.rho);
  const QuadratureConfig<double> cfg{opt.rel_tol, 60};
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 10; ++i) {
    const long m = std::lround(std::pow(10.0, 2.0 + 4.0 * i / 9.0));
    try {
      const double closed = lambda0_closed_form(geom, m);
      const auto quad = lambda_inv_sq(geom, m, 0, truncation_radius<double>(m), cfg);
      worst = std::max(worst, std::abs(quad.value - closed) / closed);
      ++used;
    } catch (const DomainError&) {
      // m too small for this curvature; skipped
    }
  }
  const double tol = 10.0 * opt.rel_tol;
  res.pass = used > 0 && worst <= tol;
  res.detail = fmt("max relative gap=%.3g (tol %.3g) over %.0f values of m", worst, tol, used);
  return res;
}

SuiteResult verify_moment_symmetry(const VerifyOptions& opt) {
  SuiteResult res{"moment_symmetry", false, false, {}};
  const ModelGeometry<double> geom(opt.rho);
  const long m = 50;
  const double R = std::min(truncation_radius<double>(m), 0.9 * geom.max_radius());
  bool zeros = true;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      if (a != b) zeros = zeros && monomial_moment(geom, m, a, b, R) == std::complex<double>(0.0, 0.0);
  res.pass = zeros;
  res.detail = zeros ? "off-diagonal moments are exact zeros" : "nonzero off-diagonal moment";
  return res;
}

SuiteResult verify_schur_routes(const VerifyOptions& opt) {
  SuiteResult res{"schur_vs_inverse", false, false, {}};
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> dim_dist(2, 12);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = dim_dist(rng);
    BorderedGram<double>::ComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = {normal(rng), normal(rng)};
    BorderedGram<double>::ComplexMatrix F = A * A.adjoint();
    F.diagonal().array() += double(n);
    for (int i = 0; i < n; ++i) {
      F(i, i) = F(i, i).real();
      for (int j = 0; j < i; ++j) F(i, j) = std::conj(F(j, i));
    }
    const auto G = BorderedGram<double>::from_entries(F);
    const double s = schur_i00(G).value, o = inverse00_oracle(G), c = orthonormalize_i00(G);
    worst = std::max({worst, std::abs(s - o) / std::abs(o), std::abs(c - o) / std::abs(o)});
  }
  res.pass = worst <= 1e-10;
  res.detail = fmt("max pairwise relative gap=%.3g over 200 matrices", worst);
  return res;
}

SuiteResult verify_cp1_constancy(const VerifyOptions& opt) {
  SuiteResult res{"cp1_constancy", false, false, {}};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (long m = 1; m <= 64; ++m)
    for (int i = 0; i < 20; ++i) {
      const auto z = std::polar(2.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      const auto d = cp1_density(m, z);
      worst = std::max(worst, std::abs(d.summed - double(m + 1)) / double(m + 1));
    }
  res.pass = worst <= 1e-9;
  res.detail = fmt("max relative deviation from m+1=%.3g", worst);
  return res;
}

std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  using Suite = SuiteResult (*)(const VerifyOptions&);
  const std::pair<const char*, Suite> suites[] = {
      {"geometry_residuals", verify_geometry_residuals},
      {"cutoff_bounds", verify_cutoff_bounds},
      {"psi_hessian_bound", verify_psi_hessian},
      {"quadrature_vs_closed_form", verify_quadrature_closed_form},
      {"moment_symmetry", verify_moment_symmetry},
      {"schur_vs_inverse", verify_schur_routes},
      {"cp1_constancy", verify_cp1_constancy}};
  for (const auto& [name, suite] : suites) {
    try {
      out.push_back(suite(opt));
    } catch (const std::exception& e) {
      out.push_back({name, false, false, std::string("aborted: ") + e.what()});
    }
  }
  return out;
}

} // namespace bergman
