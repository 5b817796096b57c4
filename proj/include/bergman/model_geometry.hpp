#pragma once
// Constant-curvature local model on a disk around x0, in an isothermal
// coordinate z centred there:
//
//   g(z) = (1 + rho |z|^2 / 2)^-2                       (g == 1 when rho == 0)
//   a(z) = (1 + rho |z|^2 / 2)^(-2/rho)                 (a == exp(-|z|^2) when rho == 0)
//
// g is the metric density (ds^2 = g dz dzbar) and a the weight of the
// bundle metric, normalised so that g(0) = a(0) = 1 and
// -d^2 log a / dz dzbar = g. For rho < 0 the model lives on |z| < sqrt(2/|rho|).
//
// Wirtinger derivatives are taken on the real pair (x, y):
// d^2/dz dzbar = (d_xx + d_yy) / 4.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

template <class Scalar = double>
class ModelGeometry {
public:
  using Complex = std::complex<Scalar>;

  // radius_cap stands in for the injectivity radius of the chart; it can
  // only shrink the natural validity disk.
  explicit ModelGeometry(Scalar rho,
                         Scalar radius_cap = std::numeric_limits<Scalar>::infinity())
      : rho_(rho) {
    using std::isfinite;
    using std::sqrt;
    if (!isfinite(rho)) throw DomainError("scalar curvature must be finite");
    if (!(radius_cap > Scalar(0))) throw DomainError("radius cap must be positive");
    Scalar natural = std::numeric_limits<Scalar>::infinity();
    if (rho < Scalar(0)) natural = sqrt(Scalar(2) / -rho);
    max_radius_ = radius_cap < natural ? radius_cap : natural;
  }

  Scalar rho() const noexcept { return rho_; }
  Scalar max_radius() const noexcept { return max_radius_; }
  bool contains(Scalar r) const noexcept { return r >= Scalar(0) && r < max_radius_; }

  // Radial forms in r^2; callers are responsible for the domain check.
  Scalar log_metric_density(Scalar r2) const {
    using std::log1p;
    if (rho_ == Scalar(0)) return Scalar(0);
    return Scalar(-2) * log1p(rho_ * r2 / Scalar(2));
  }

  Scalar log_bundle_weight(Scalar r2) const {
    using std::log1p;
    if (rho_ == Scalar(0)) return -r2;
    return Scalar(-2) / rho_ * log1p(rho_ * r2 / Scalar(2));
  }

  void require_inside(Scalar r) const {
    if (!contains(r)) throw DomainError("point outside the model's validity disk");
  }

private:
  Scalar rho_;
  Scalar max_radius_;
};

template <class Scalar>
Scalar metric_density(const ModelGeometry<Scalar>& geom, std::complex<Scalar> z) {
  using std::exp;
  geom.require_inside(std::abs(z));
  return exp(geom.log_metric_density(std::norm(z)));
}

template <class Scalar>
Scalar bundle_weight(const ModelGeometry<Scalar>& geom, std::complex<Scalar> z) {
  using std::exp;
  geom.require_inside(std::abs(z));
  return exp(geom.log_bundle_weight(std::norm(z)));
}

namespace detail {

// Five-point Laplacian of f at z, divided by 4.
template <class Scalar, class F>
Scalar wirtinger_mixed(F&& f, std::complex<Scalar> z, Scalar h) {
  const Scalar x = z.real(), y = z.imag();
  const Scalar sum = f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - Scalar(4) * f(x, y);
  return sum / (Scalar(4) * h * h);
}

template <class Scalar>
void require_stencil(const ModelGeometry<Scalar>& geom, std::complex<Scalar> z, Scalar h) {
  if (!(h > Scalar(0))) throw DomainError("finite-difference step must be positive");
  if (!geom.contains(std::abs(z) + h))
    throw DomainError("finite-difference stencil leaves the validity disk");
}

} // namespace detail

// g^-1 d^2(log g)/dz dzbar + rho, by central differences; O(h^2).
template <class Scalar>
Scalar curvature_residual(const ModelGeometry<Scalar>& geom, std::complex<Scalar> z, Scalar h) {
  detail::require_stencil(geom, z, h);
  auto log_g = [&](Scalar x, Scalar y) { return geom.log_metric_density(x * x + y * y); };
  return detail::wirtinger_mixed(log_g, z, h) / metric_density(geom, z) + geom.rho();
}

// -d^2(log a)/dz dzbar - g, by central differences; O(h^2).
template <class Scalar>
Scalar weight_residual(const ModelGeometry<Scalar>& geom, std::complex<Scalar> z, Scalar h) {
  detail::require_stencil(geom, z, h);
  auto log_a = [&](Scalar x, Scalar y) { return geom.log_bundle_weight(x * x + y * y); };
  return -detail::wirtinger_mixed(log_a, z, h) - metric_density(geom, z);
}

// Residual of the polar form g'' + g'/r - (g')^2/g + 4 rho g^2 at radius r,
// divided by 4 g^2 so it is measured in the units of curvature_residual
// (the two agree up to discretisation error).
template <class Scalar>
Scalar polar_ode_residual(const ModelGeometry<Scalar>& geom, Scalar r, Scalar h) {
  using std::exp;
  if (!(h > Scalar(0)) || !(r > h))
    throw DomainError("polar stencil needs 0 < h < r");
  if (!geom.contains(r + h)) throw DomainError("finite-difference stencil leaves the validity disk");
  auto g = [&](Scalar s) { return exp(geom.log_metric_density(s * s)); };
  const Scalar gm = g(r - h), g0 = g(r), gp = g(r + h);
  const Scalar d1 = (gp - gm) / (Scalar(2) * h);
  const Scalar d2 = (gp - Scalar(2) * g0 + gm) / (h * h);
  const Scalar raw = d2 + d1 / r - d1 * d1 / g0 + Scalar(4) * geom.rho() * g0 * g0;
  return raw / (Scalar(4) * g0 * g0);
}

template <class Scalar = double>
struct KCoordinateReport {
  // Entry k-1 holds |d^k f / dz^k (0)| for k = 1..order.
  std::vector<Scalar> metric;
  std::vector<Scalar> weight;
};

namespace detail {

inline double binomial(int n, int k) {
  double c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Central difference for d_x^i d_y^j f(0, 0) on the tensor stencil with
// offsets (i/2 - a) h, (j/2 - b) h.
template <class Scalar, class F>
Scalar mixed_partial_at_origin(F&& f, int i, int j, Scalar h) {
  Scalar acc = 0;
  for (int a = 0; a <= i; ++a) {
    const Scalar wa = (a % 2 ? -1 : 1) * Scalar(binomial(i, a));
    const Scalar x = (Scalar(i) / 2 - Scalar(a)) * h;
    for (int b = 0; b <= j; ++b) {
      const Scalar wb = (b % 2 ? -1 : 1) * Scalar(binomial(j, b));
      const Scalar y = (Scalar(j) / 2 - Scalar(b)) * h;
      acc += wa * wb * f(x * x + y * y);
    }
  }
  using std::pow;
  return acc / pow(h, i + j);
}

// d^k/dz^k = 2^-k (d_x - i d_y)^k, applied to a function of |z|^2.
template <class Scalar, class F>
Scalar pure_holomorphic_derivative(F&& f, int k, Scalar h) {
  const std::complex<Scalar> minus_i(0, -1);
  std::complex<Scalar> acc(0);
  for (int j = 0; j <= k; ++j)
    acc += Scalar(binomial(k, j)) * std::pow(minus_i, j) * mixed_partial_at_origin(f, k - j, j, h);
  return std::abs(acc) / std::pow(Scalar(2), k);
}

} // namespace detail

// Finite-difference estimates of the pure holomorphic derivatives of g and a
// at the centre, orders 1..order (order <= 4). All vanish in a K-coordinate.
template <class Scalar>
KCoordinateReport<Scalar> k_coordinate_check(const ModelGeometry<Scalar>& geom, int order,
                                             Scalar step = Scalar(1e-3)) {
  using std::exp;
  using std::sqrt;
  if (order < 1 || order > 4) throw DomainError("k_coordinate_check supports orders 1..4");
  if (!(step > Scalar(0))) throw DomainError("finite-difference step must be positive");
  if (!geom.contains(Scalar(order) / 2 * step * sqrt(Scalar(2))))
    throw DomainError("finite-difference stencil leaves the validity disk");

  auto g = [&](Scalar r2) { return exp(geom.log_metric_density(r2)); };
  auto a = [&](Scalar r2) { return exp(geom.log_bundle_weight(r2)); };
  KCoordinateReport<Scalar> out;
  for (int k = 1; k <= order; ++k) {
    out.metric.push_back(detail::pure_holomorphic_derivative(g, k, step));
    out.weight.push_back(detail::pure_holomorphic_derivative(a, k, step));
  }
  return out;
}

} // namespace bergman
