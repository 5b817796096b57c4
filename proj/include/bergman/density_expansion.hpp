#pragma once
// Bergman density at the centre of the constant-curvature model,
//
//   density = I_00 * lambda_0^2,   lambda_0^2 = (m + rho/2) / (1 - T),
//
// compared with the two-term expansion m + rho/2. The remainder is formed as
// (I_00 - 1) lambda_0^2 + (m + rho/2) T / (1 - T) so that tails of size
// exp(-(log m)^2) are not lost to cancellation against m.
//
// cp1_density is the exact global answer on the sphere model (rho = 2,
// sections z^k of degree <= m), where the density is m + 1 everywhere.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/gram_schur.hpp"
#include "bergman/model_geometry.hpp"
#include "bergman/radial_quadrature.hpp"

namespace bergman {

template <class Scalar = double>
struct DensityReport {
  long m = 0;
  Scalar rho = 0;
  Scalar density = 0;
  Scalar lo = 0;
  Scalar hi = 0;
  Scalar reference = 0;
  Scalar remainder = 0;
  Scalar budget_C = 0;
  Scalar i00 = 0;
  Scalar lambda0_sq = 0;
};

template <class Scalar = double>
Scalar expansion_reference(long m, Scalar rho) {
  return Scalar(m) + rho / Scalar(2);
}

template <class Scalar>
DensityReport<Scalar> density_estimate(const ModelGeometry<Scalar>& geom, long m, Scalar budget_C,
                                       const std::vector<int>& v_degrees = {},
                                       const QuadratureConfig<Scalar>& cfg = {}) {
  using std::abs;
  using std::exp;
  using std::expm1;
  if (m < 10) throw DomainError("density_estimate needs m >= 10");
  const Scalar log_tail = lambda0_log_tail(geom, m);
  const Scalar one_minus_tail = -expm1(log_tail);
  const Scalar tail_ratio = exp(log_tail) / one_minus_tail; // T / (1 - T)

  const auto gram = assemble_truncated_gram(geom, m, v_degrees,
                                            ErrorBudget<Scalar>::canonical(budget_C, m), cfg);
  const auto schur = schur_i00(gram);

  DensityReport<Scalar> r;
  r.m = m;
  r.rho = geom.rho();
  r.budget_C = budget_C;
  r.reference = expansion_reference(m, geom.rho());
  r.lambda0_sq = r.reference / one_minus_tail;
  r.i00 = schur.value;
  r.density = schur.value * r.lambda0_sq;
  const Scalar lambda_tail = r.reference * tail_ratio; // lambda0^2 - (m + rho/2)
  r.remainder = (schur.value - Scalar(1)) * r.lambda0_sq + lambda_tail;
  const Scalar half_width = r.lambda0_sq * schur.spread + abs(lambda_tail);
  r.lo = r.density - half_width;
  r.hi = r.density + half_width;
  return r;
}

template <class Scalar = double>
struct Cp1Density {
  Scalar analytic = 0; // m + 1
  Scalar summed = 0;   // sum_k lambda_k^2 |z|^2k (1 + |z|^2)^-m
};

// lambda_k^-2 = int |z|^2k (1+|z|^2)^-(m+2) dV over the plane
//             = k! (m-k)! / (m+1)!,
// summed term by term with log-space binomials.
template <class Scalar>
Cp1Density<Scalar> cp1_density(long m, std::complex<Scalar> z) {
  using std::exp;
  using std::isfinite;
  using std::lgamma;
  using std::log;
  using std::log1p;
  if (m < 1) throw DomainError("cp1_density needs m >= 1");
  const Scalar r2 = std::norm(z);
  const Scalar mm = Scalar(m);
  const Scalar log_weight = -mm * log1p(r2);

  Cp1Density<Scalar> out;
  out.analytic = mm + Scalar(1);
  const Scalar log_r2 = r2 > Scalar(0) ? log(r2) : Scalar(0);
  const long k_max = r2 > Scalar(0) ? m : 0; // |z|^2k vanishes at z = 0 for k > 0
  Scalar sum = 0;
  for (long k = 0; k <= k_max; ++k) {
    const Scalar kk = Scalar(k);
    const Scalar log_norm_sq =
        lgamma(mm + Scalar(2)) - lgamma(kk + Scalar(1)) - lgamma(mm - kk + Scalar(1));
    sum += exp(log_norm_sq + kk * log_r2 + log_weight);
  }
  out.summed = sum;
  if (!isfinite(out.summed)) throw DomainError("cp1_density overflowed");
  return out;
}

template <class Scalar = double>
struct SweepResult {
  std::vector<DensityReport<Scalar>> reports;
  Scalar fitted_C = 0;              // max |remainder| exp((log m)^2 / 8)
  std::vector<long> decay_violations; // m where the scaled remainder grew
  bool envelope_pass = true;        // fitted_C <= 1
};

// Thrown mid-sweep; carries the reports completed before the failure.
template <class Scalar = double>
class SweepFailure : public std::runtime_error {
public:
  SweepFailure(const std::string& what, long failed_m, SweepResult<Scalar> partial)
      : std::runtime_error(what), failed_m_(failed_m), partial_(std::move(partial)) {}
  long failed_m() const noexcept { return failed_m_; }
  const SweepResult<Scalar>& partial() const noexcept { return partial_; }

private:
  long failed_m_;
  SweepResult<Scalar> partial_;
};

template <class Scalar>
Scalar scaled_remainder(const DensityReport<Scalar>& r) {
  using std::abs;
  using std::exp;
  using std::log;
  const Scalar L = log(Scalar(r.m));
  return abs(r.remainder) * exp(L * L / Scalar(8));
}

template <class Scalar>
void summarize(SweepResult<Scalar>& s) {
  s.fitted_C = 0;
  s.decay_violations.clear();
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    const Scalar scaled = scaled_remainder(s.reports[i]);
    s.fitted_C = std::max(s.fitted_C, scaled);
    if (i > 0 && scaled > scaled_remainder(s.reports[i - 1]))
      s.decay_violations.push_back(s.reports[i].m);
  }
  s.envelope_pass = s.fitted_C <= Scalar(1);
}

template <class Scalar>
SweepResult<Scalar> remainder_sweep(Scalar rho, const std::vector<long>& m_list, Scalar budget_C,
                                    const std::vector<int>& v_degrees = {},
                                    const QuadratureConfig<Scalar>& cfg = {},
                                    Scalar radius_cap = std::numeric_limits<Scalar>::infinity()) {
  const ModelGeometry<Scalar> geom(rho, radius_cap);
  SweepResult<Scalar> out;
  for (long m : m_list) {
    try {
      out.reports.push_back(density_estimate(geom, m, budget_C, v_degrees, cfg));
    } catch (const std::exception& e) {
      summarize(out);
      throw SweepFailure<Scalar>(e.what(), m, std::move(out));
    }
  }
  summarize(out);
  return out;
}

} // namespace bergman
