// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance        run all
//   acceptance N      run criterion N only (1..11)
//
// Exit status is nonzero iff a selected criterion failed.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/commands.hpp"
#include "bergman/cutoff_weight.hpp"
#include "bergman/density_expansion.hpp"
#include "bergman/gram_schur.hpp"
#include "bergman/model_geometry.hpp"
#include "bergman/radial_quadrature.hpp"
#include "bergman/run_config.hpp"

using namespace bergman;
using Cx = std::complex<double>;

namespace {

constexpr std::uint64_t seed = 20240601;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<long> log_spaced(double lo, double hi, int n) {
  std::vector<long> out;
  for (int i = 0; i < n; ++i) {
    const double e = std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1);
    const long m = std::lround(std::pow(10.0, e));
    if (out.empty() || m > out.back()) out.push_back(m);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome cp1_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (long m = 1; m <= 64; ++m)
    for (int i = 0; i < 20; ++i) {
      const Cx z = std::polar(2.0 * u(rng), 2.0 * std::numbers::pi * u(rng));
      const auto d = cp1_density(m, z);
      worst = std::max(worst, std::abs(d.summed - double(m + 1)) / double(m + 1));
    }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && t <= 5.0, fmt("max rel error %.3g (<= 1e-9), %.3f s (<= 5 s)", worst, t)};
}

Outcome closed_form_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (double rho : {-2.0, -1.0, 0.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    for (long m : log_spaced(1e2, 1e6, 10)) {
      const auto q = lambda_inv_sq(geom, m, 0, truncation_radius<double>(m));
      const double cf = lambda0_closed_form(geom, m);
      worst = std::max(worst, std::abs(q.value - cf) / cf);
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t <= 10.0, fmt("max rel gap %.3g (<= 1e-10), %.3f s (<= 10 s)", worst, t)};
}

// |lambda0^-2 (m + rho/2) - 1| is the tail T itself; it is compared in log
// form because T drops far below double epsilon relative to 1.
Outcome lambda0_envelope() {
  std::string detail;
  bool pass = true;
  for (double rho : {-2.0, -1.0, 0.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    double worst = 0;
    long worst_m = 0;
    for (long m : log_spaced(1e2, 1e6, 10)) {
      const double L = std::log(double(m));
      const double ratio = std::exp(lambda0_log_tail(geom, m) + L * L); // T / e^{-L^2}
      if (ratio > worst) worst = ratio, worst_m = m;
    }
    const double bound = rho == 0.0 ? 1.0 : 2.0;
    pass = pass && worst <= bound * (1 + 1e-12);
    detail += fmt("rho=%g: max T/e^{-(log m)^2}=%.3g at m=%g (<= %g); ", rho, worst, double(worst_m), bound);
  }
  return {pass, detail};
}

Outcome density_envelope() {
  std::string detail;
  bool pass = true;
  for (double rho : {-2.0, 0.0, 2.0}) {
    const auto sweep = remainder_sweep(rho, log_spaced(10, 1e6, 16), 0.0);
    double worst = 0;
    for (const auto& r : sweep.reports) {
      const double L = std::log(double(r.m));
      worst = std::max(worst, std::abs(r.remainder) / std::exp(-L * L / 8));
    }
    pass = pass && worst <= 1.0;
    detail += fmt("rho=%g: max |rem|/e^{-(log m)^2/8}=%.3g; ", rho, worst);
  }
  return {pass, detail};
}

Outcome schur_identity() {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> dim(2, 12);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(rng);
    BorderedGram<double>::ComplexMatrix X(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) X(i, j) = Cx(nd(rng), nd(rng));
    BorderedGram<double>::ComplexMatrix F = X * X.adjoint();
    F.diagonal().array() += 0.1 * n;
    for (int i = 0; i < n; ++i) {
      F(i, i) = F(i, i).real();
      for (int j = 0; j < i; ++j) F(i, j) = std::conj(F(j, i));
    }
    const auto G = BorderedGram<double>::from_entries(F);
    const double a = schur_i00(G).value, b = inverse00_oracle(G), c = orthonormalize_i00(G);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    worst = std::max({worst, std::abs(a - b) / scale, std::abs(a - c) / scale, std::abs(b - c) / scale});
  }
  return {worst <= 1e-10, fmt("max pairwise rel gap %.3g over 1000 matrices (<= 1e-10)", worst)};
}

Outcome geometry_residuals() {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  double worst_order_gap = 0;
  for (double rho : {-2.0, -1.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    const double reach = rho < 0 ? 0.6 * geom.max_radius() : 1.0;
    double coarse = 0, fine = 0, polar_coarse = 0, polar_fine = 0;
    for (int i = 0; i < 100; ++i) {
      const double r = reach * (0.05 + 0.95 * u(rng));
      const Cx z = std::polar(r, 2.0 * std::numbers::pi * u(rng));
      worst = std::max({worst, std::abs(curvature_residual(geom, z, 1e-3)),
                        std::abs(polar_ode_residual(geom, r, 1e-3))});
      coarse = std::max(coarse, std::abs(curvature_residual(geom, z, 1e-2)));
      fine = std::max(fine, std::abs(curvature_residual(geom, z, 5e-3)));
      polar_coarse = std::max(polar_coarse, std::abs(polar_ode_residual(geom, r, 1e-2)));
      polar_fine = std::max(polar_fine, std::abs(polar_ode_residual(geom, r, 5e-3)));
    }
    worst_order_gap = std::max({worst_order_gap, std::abs(std::log2(coarse / fine) - 2),
                                std::abs(std::log2(polar_coarse / polar_fine) - 2)});
  }
  return {worst <= 1e-5 && worst_order_gap <= 0.3,
          fmt("max residual %.3g at h=1e-3 (<= 1e-5), max |order-2| %.3g (<= 0.3)", worst,
              worst_order_gap)};
}

Outcome cutoff_constraints() {
  const CutoffProfile<double> eta(CutoffKind::piecewise_quadratic);
  double max_slope = 0, min_slope = 0, max_curv = 0;
  int used = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = 1.2 * (i + 0.5) / 10000;
    if (eta.is_knot(t)) continue;
    max_slope = std::max(max_slope, -eta.slope(t));
    min_slope = std::min(min_slope, -eta.slope(t));
    max_curv = std::max(max_curv, std::abs(eta.curvature(t)));
    ++used;
  }
  const bool pass = min_slope >= 0 && max_slope <= 4 + 1e-9 && max_curv <= 8 + 1e-9;
  return {pass, fmt("-eta' in [%.3g, %.3g] (<= 4), max |eta''| %.3g (<= 8), %g samples", min_slope,
                    max_slope, max_curv, used)};
}

Outcome psi_hessian() {
  bool pass = true;
  double worst = 0; // largest min_observed / bound over both conventions
  for (double rho : {-2.0, 0.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    for (auto [m, pp] : {std::pair{1000L, 2}, std::pair{10000L, 2}, std::pair{10000L, 3}}) {
      const auto chk = psi_hessian_bound_check(WeightParams<double>{1, pp, m},
                                               CutoffProfile<double>(CutoffKind::piecewise_quadratic), geom);
      pass = pass && chk.pass && chk.min_observed >= chk.unscaled_bound;
      worst = std::max(worst, chk.min_observed / chk.bound);
    }
  }
  return {pass, fmt("worst min(ddbar Psi / g) / bound %.3g with the 1/2pi bound (<= 1); "
                    "the unscaled bound is looser", worst)};
}

Outcome moment_symmetry() {
  bool zeros = true;
  double worst = 0;
  for (double rho : {-2.0, 0.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    const long m = 1000;
    const double R = truncation_radius<double>(m);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        const auto v = monomial_moment(geom, m, a, b, R);
        if (a != b) {
          zeros = zeros && v.real() == 0.0 && v.imag() == 0.0;
          continue;
        }
        // composite trapezoid with Richardson steps, independent of the integrator
        auto f = [&](double r) {
          const double base = 1 + rho * r * r / 2;
          const double log_a = rho == 0 ? -r * r : -2 / rho * std::log(base);
          return 2 * std::pow(r, 2 * a + 1) * std::exp(double(m) * log_a) / (base * base);
        };
        auto trap = [&](long n) {
          const double h = R / double(n);
          double s = 0.5 * (f(0) + f(R));
          for (long i = 1; i < n; ++i) s += f(h * double(i));
          return s * h;
        };
        const double t1 = trap(1 << 14), t2 = trap(1 << 15), t3 = trap(1 << 16);
        const double r1 = t2 + (t2 - t1) / 3, r2 = t3 + (t3 - t2) / 3;
        const double ref = r2 + (r2 - r1) / 15;
        worst = std::max(worst, std::abs(v.real() - ref) / ref);
      }
  }
  return {zeros && worst <= 1e-9,
          std::string(zeros ? "off-diagonal exact zeros" : "NONZERO off-diagonal moment") +
              fmt("; max diagonal rel gap vs trapezoid %.3g (<= 1e-9)", worst)};
}

Outcome peak_norm() {
  bool pass = true;
  std::string detail;
  const auto ms = log_spaced(1e2, 1e5, 16);
  for (double rho : {-2.0, 0.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    for (int p = 0; p <= 2; ++p) {
      const auto rep = peak_norm_bound_check(geom, ms, p);
      pass = pass && rep.pass;
      detail += fmt("rho=%g p=%g C2=%.4g var=%.3g; ", rho, p, rep.max_ratio, rep.top_decade_variation);
    }
  }
  return {pass, detail + "(variation <= 0.1)"};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("bergman_acceptance_" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  RunConfig cfg;
  cfg.m_list = parse_m_range("100..10000", 5);
  std::string text[2];
  for (int run = 0; run < 2; ++run) {
    cfg.out = (dir / ("sweep_" + std::to_string(run) + ".csv")).string();
    std::ostringstream console, diag;
    if (cmd_sweep(cfg, console, diag) != 0) return {false, "sweep exited nonzero: " + diag.str()};
    std::ifstream in(cfg.out, std::ios::binary);
    text[run].assign(std::istreambuf_iterator<char>(in), {});
  }
  std::filesystem::remove_all(dir);
  const bool same = !text[0].empty() && text[0] == text[1];
  return {same, fmt("%g bytes per run, %s", double(text[0].size())) + (same ? "identical" : "DIFFERENT")};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"cp1_exactness", cp1_exactness},         {"closed_form_agreement", closed_form_agreement},
      {"lambda0_envelope", lambda0_envelope},   {"density_envelope", density_envelope},
      {"schur_identity", schur_identity},       {"geometry_residuals", geometry_residuals},
      {"cutoff_constraints", cutoff_constraints}, {"psi_hessian_bound", psi_hessian},
      {"moment_symmetry", moment_symmetry},     {"peak_norm_bound", peak_norm},
      {"sweep_determinism", determinism}};

  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > int(criteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
    first = std::size_t(k - 1);
    last = first + 1;
  }

  bool all = true;
  for (std::size_t i = first; i < last; ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %02zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
  }
  return all ? 0 : 1;
}
