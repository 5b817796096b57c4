#pragma once
// Rotationally symmetric moments of the model weight a^m g on a disk,
// in the measure (i/2pi) dz ^ dzbar = (1/pi) dx dy:
//
//   int_{|z|<=R} |z|^{2p} a^m g dV = int_0^R r^{2p} a(r)^m g(r) 2r dr.
//
// The angular integral is done analytically (it is 2pi or 0); the radial
// one by adaptive Gauss-Kronrod with the integrand evaluated in log space,
// since a^m underflows near r = log m / sqrt(m) for large m.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/model_geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

template <class Scalar = double>
struct RadialMoment {
  long m = 0;
  int p = 0;
  Scalar radius = 0;
  Scalar value = 0;
  Scalar abs_err = 0;
};

// log m / sqrt(m): radius of the disk the peak sections live on.
template <class Scalar = double>
Scalar truncation_radius(long m) {
  using std::log;
  using std::sqrt;
  return log(Scalar(m)) / sqrt(Scalar(m));
}

template <class Scalar>
RadialMoment<Scalar> lambda_inv_sq(const ModelGeometry<Scalar>& geom, long m, int p, Scalar R,
                                   const QuadratureConfig<Scalar>& cfg = {}) {
  using std::exp;
  using std::isinf;
  using std::log;
  using std::sqrt;
  if (m < 2) throw DomainError("lambda_inv_sq needs m >= 2");
  if (p < 0) throw DomainError("monomial degree must be nonnegative");
  if (!(R > Scalar(0))) throw DomainError("integration radius must be positive");
  if (!isinf(R) && !(R < geom.max_radius()))
    throw DomainError("integration radius must lie inside the validity disk");
  if (isinf(R) && !isinf(geom.max_radius()))
    throw DomainError("infinite radius needs an unbounded model");

  const Scalar mm = Scalar(m);
  auto integrand = [&](Scalar r) {
    if (r <= Scalar(0)) return Scalar(0);
    const Scalar r2 = r * r;
    const Scalar log_f = mm * geom.log_bundle_weight(r2) + geom.log_metric_density(r2) +
                         Scalar(2 * p + 1) * log(r);
    return Scalar(2) * exp(log_f);
  };

  QuadratureResult<Scalar> q;
  if (isinf(R)) {
    // r = s u / (1 - u) with s = 1/sqrt(m), the width of the weight's peak.
    const Scalar s = Scalar(1) / sqrt(mm);
    auto mapped = [&](Scalar u) {
      const Scalar w = Scalar(1) - u;
      if (w <= Scalar(0)) return Scalar(0);
      return integrand(s * u / w) * s / (w * w);
    };
    q = integrate_adaptive(mapped, Scalar(0), Scalar(1), cfg);
  } else {
    q = integrate_adaptive(integrand, Scalar(0), R, cfg);
  }
  if (!(q.value > Scalar(0)))
    throw QuadratureFailure("moment underflowed to zero", static_cast<double>(q.value),
                            static_cast<double>(q.abs_err));
  return {m, p, R, q.value, q.abs_err};
}

namespace detail {

template <class Scalar>
void require_lambda0_domain(const ModelGeometry<Scalar>& geom, long m) {
  using std::abs;
  using std::log;
  if (m < 2) throw DomainError("lambda0 needs m >= 2");
  if (!(truncation_radius<Scalar>(m) < geom.max_radius()))
    throw DomainError("truncation disk log m / sqrt(m) exceeds the validity disk");
  const Scalar L = log(Scalar(m));
  if (geom.rho() != Scalar(0) && !(abs(geom.rho() * L * L / (Scalar(2) * Scalar(m))) < Scalar(1)))
    throw DomainError("|rho (log m)^2 / 2m| must be below 1");
}

} // namespace detail

// log T where lambda0^-2 = (1 - T) / (m + rho/2):
//   T = (1 + rho (log m)^2 / 2m)^(-1 - 2m/rho),  or exp(-(log m)^2) at rho = 0.
template <class Scalar>
Scalar lambda0_log_tail(const ModelGeometry<Scalar>& geom, long m) {
  using std::log;
  using std::log1p;
  detail::require_lambda0_domain(geom, m);
  const Scalar L = log(Scalar(m));
  const Scalar rho = geom.rho();
  if (rho == Scalar(0)) return -L * L;
  const Scalar mm = Scalar(m);
  return (Scalar(-1) - Scalar(2) * mm / rho) * log1p(rho * L * L / (Scalar(2) * mm));
}

template <class Scalar>
Scalar lambda0_closed_form(const ModelGeometry<Scalar>& geom, long m) {
  using std::expm1;
  const Scalar one_minus_tail = -expm1(lambda0_log_tail(geom, m));
  return one_minus_tail / (Scalar(m) + geom.rho() / Scalar(2));
}

// int z^alpha zbar^beta a^m g dV over |z| <= R. Off-diagonal moments vanish
// by rotational symmetry and are returned as an exact zero.
template <class Scalar>
std::complex<Scalar> monomial_moment(const ModelGeometry<Scalar>& geom, long m, int alpha, int beta,
                                     Scalar R, const QuadratureConfig<Scalar>& cfg = {}) {
  if (alpha < 0 || beta < 0) throw DomainError("monomial degrees must be nonnegative");
  if (alpha != beta) {
    using std::isinf;
    if (m < 2) throw DomainError("monomial_moment needs m >= 2");
    if (!(R > Scalar(0)) || (!isinf(R) && !(R < geom.max_radius())))
      throw DomainError("integration radius must lie inside the validity disk");
    return {Scalar(0), Scalar(0)};
  }
  return {lambda_inv_sq(geom, m, alpha, R, cfg).value, Scalar(0)};
}

template <class Scalar = double>
struct PeakNormReport {
  std::vector<long> m_values;
  std::vector<Scalar> ratios;       // lambda_p^2 / m^(1+p)
  Scalar max_ratio = 0;             // empirical C2
  Scalar top_decade_variation = 0;  // (max - min) / max over m >= m_max / 10
  bool pass = false;
};

// lambda_p^2 = 1 / lambda_inv_sq on the truncation disk, checked against
// C2 m^(1+p). Passes when every ratio is finite and positive and the ratio
// settles (varies by at most 10%) over the top decade of m.
template <class Scalar>
PeakNormReport<Scalar> peak_norm_bound_check(const ModelGeometry<Scalar>& geom,
                                             const std::vector<long>& m_list, int p,
                                             const QuadratureConfig<Scalar>& cfg = {}) {
  using std::isfinite;
  using std::pow;
  if (p < 0 || p > 3) throw DomainError("peak_norm_bound_check supports 0 <= p <= 3");
  if (m_list.empty()) throw DomainError("empty m list");

  PeakNormReport<Scalar> out;
  out.m_values = m_list;
  long m_max = 0;
  for (long m : m_list) {
    const auto moment = lambda_inv_sq(geom, m, p, truncation_radius<Scalar>(m), cfg);
    const Scalar ratio = Scalar(1) / (moment.value * pow(Scalar(m), Scalar(1 + p)));
    out.ratios.push_back(ratio);
    if (ratio > out.max_ratio) out.max_ratio = ratio;
    if (m > m_max) m_max = m;
  }

  bool finite = true;
  Scalar lo = std::numeric_limits<Scalar>::infinity(), hi = 0;
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    finite = finite && isfinite(out.ratios[i]) && out.ratios[i] > Scalar(0);
    if (Scalar(m_list[i]) * Scalar(10) >= Scalar(m_max)) {
      lo = out.ratios[i] < lo ? out.ratios[i] : lo;
      hi = out.ratios[i] > hi ? out.ratios[i] : hi;
    }
  }
  out.top_decade_variation = hi > Scalar(0) ? (hi - lo) / hi : Scalar(0);
  out.pass = finite && out.top_decade_variation <= Scalar(0.1);
  return out;
}

} // namespace bergman
