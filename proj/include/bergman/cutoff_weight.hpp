#pragma once
// Cut-off profile eta (1 on [0, 1/2], 0 on [1, inf)) and the weight
//
//   Psi(z) = (n + 2p') eta(t) log t,   t = m |z|^2 / (log m)^2,
//
// used to localise peak sections. Two transition shapes are provided:
//
//  * piecewise_quadratic: eta'' = -8 on (1/2, 3/4), +8 on (3/4, 1), with
//    eta'(1/2+) = eta'(1-) = -1. Slope bound 3, curvature bound 8. The slope
//    jumps by 1 at the two knots: no C^1 profile can drop by 1 across a
//    width-1/2 window with |eta''| <= 8 (the maximum is a drop of 1/2).
//  * smooth: C-infinity, -eta' proportional to a smoothed triangle times a
//    flat bump. Slope bound 4, curvature bound 24 (observed ~3.46 and ~19.2).
//
// Both are symmetric about t = 3/4: eta(t) + eta(3/2 - t) = 1.

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>

#include "bergman/errors.hpp"
#include "bergman/model_geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class CutoffKind { piecewise_quadratic, smooth };

inline std::string_view to_string(CutoffKind kind) {
  return kind == CutoffKind::smooth ? "smooth" : "c1";
}

template <class Scalar = double>
class CutoffProfile {
public:
  static constexpr Scalar knot_inner = Scalar(0.5);
  static constexpr Scalar knot_outer = Scalar(1);

  explicit CutoffProfile(CutoffKind kind = CutoffKind::piecewise_quadratic) : kind_(kind) {}

  CutoffKind kind() const noexcept { return kind_; }

  // Bounds this profile is built to respect: 0 <= -eta' <= slope_bound and
  // |eta''| <= curvature_bound away from the knots.
  Scalar slope_bound() const noexcept { return Scalar(4); }
  Scalar curvature_bound() const noexcept {
    return kind_ == CutoffKind::smooth ? Scalar(24) : Scalar(8);
  }

  bool is_knot(Scalar t) const noexcept {
    if (t == knot_inner || t == knot_outer) return true;
    return kind_ == CutoffKind::piecewise_quadratic && t == Scalar(0.75);
  }

  Scalar value(Scalar t) const {
    require_nonnegative(t);
    if (t <= knot_inner) return Scalar(1);
    if (t >= knot_outer) return Scalar(0);
    if (kind_ == CutoffKind::piecewise_quadratic) {
      if (t <= Scalar(0.75)) {
        const Scalar s = t - knot_inner;
        return Scalar(1) - s - Scalar(4) * s * s;
      }
      const Scalar s = knot_outer - t;
      return s + Scalar(4) * s * s;
    }
    const Scalar x = Scalar(2) * (t - knot_inner);
    if (x <= Scalar(0.5)) return Scalar(1) - bump_integral(Scalar(0), x) / bump_mass();
    return bump_integral(x, Scalar(1)) / bump_mass();
  }

  // eta'; one-sided (outer) value at the knots.
  Scalar slope(Scalar t) const {
    require_nonnegative(t);
    if (t <= knot_inner || t >= knot_outer) return Scalar(0);
    if (kind_ == CutoffKind::piecewise_quadratic) {
      if (t <= Scalar(0.75)) return Scalar(-1) - Scalar(8) * (t - knot_inner);
      return Scalar(-1) - Scalar(8) * (knot_outer - t);
    }
    return Scalar(-2) * bump(Scalar(2) * (t - knot_inner)) / bump_mass();
  }

  Scalar curvature(Scalar t) const {
    require_nonnegative(t);
    if (t <= knot_inner || t >= knot_outer) return Scalar(0);
    if (kind_ == CutoffKind::piecewise_quadratic) return t <= Scalar(0.75) ? Scalar(-8) : Scalar(8);
    return Scalar(-4) * bump_derivative(Scalar(2) * (t - knot_inner)) / bump_mass();
  }

private:
  static constexpr Scalar flatness = Scalar(0.1);
  static constexpr Scalar rounding = Scalar(0.2);

  static void require_nonnegative(Scalar t) {
    if (!(t >= Scalar(0))) throw DomainError("cut-off argument must be nonnegative");
  }

  // Smoothed triangle on (0, 1) times exp(-k / (4x(1-x))); unnormalised.
  static Scalar bump(Scalar x) {
    using std::exp;
    using std::sqrt;
    if (x <= Scalar(0) || x >= Scalar(1)) return Scalar(0);
    const Scalar e2 = rounding * rounding;
    const Scalar c = x - Scalar(0.5);
    const Scalar tri = sqrt(Scalar(0.25) + e2) - sqrt(c * c + e2);
    return tri * exp(-flatness / (Scalar(4) * x * (Scalar(1) - x)));
  }

  static Scalar bump_derivative(Scalar x) {
    using std::exp;
    using std::sqrt;
    if (x <= Scalar(0) || x >= Scalar(1)) return Scalar(0);
    const Scalar e2 = rounding * rounding;
    const Scalar c = x - Scalar(0.5);
    const Scalar root = sqrt(c * c + e2);
    const Scalar tri = sqrt(Scalar(0.25) + e2) - root;
    const Scalar q = x * (Scalar(1) - x);
    const Scalar envelope = exp(-flatness / (Scalar(4) * q));
    const Scalar envelope_log_slope = flatness * (Scalar(1) - Scalar(2) * x) / (Scalar(4) * q * q);
    return envelope * (-c / root + tri * envelope_log_slope);
  }

  static Scalar bump_integral(Scalar lo, Scalar hi) {
    // The bump has unit-order mass, so an absolute floor covers the tiny
    // integrals next to the end points.
    QuadratureConfig<Scalar> cfg{Scalar(1e-14), 400, Scalar(1e-16)};
    return integrate_adaptive([](Scalar x) { return bump(x); }, lo, hi, cfg, 2).value;
  }

  static Scalar bump_mass() {
    static const Scalar mass = bump_integral(Scalar(0), Scalar(1));
    return mass;
  }

  CutoffKind kind_;
};

template <class Scalar>
Scalar eta(const CutoffProfile<Scalar>& profile, Scalar t) { return profile.value(t); }
template <class Scalar>
Scalar eta_d1(const CutoffProfile<Scalar>& profile, Scalar t) { return profile.slope(t); }
template <class Scalar>
Scalar eta_d2(const CutoffProfile<Scalar>& profile, Scalar t) { return profile.curvature(t); }

template <class Scalar = double>
struct WeightParams {
  int n = 1;
  int p_prime = 2;
  long m = 2;

  void validate() const {
    if (n != 1) throw DomainError("only complex dimension n = 1 is modelled");
    if (p_prime < 1) throw DomainError("p' must exceed |P| >= 0");
    if (m < 2) throw DomainError("tensor power m must be at least 2");
  }

  Scalar coefficient() const { return Scalar(n + 2 * p_prime); }
  Scalar log_m() const { using std::log; return log(Scalar(m)); }

  // t = m |z|^2 / (log m)^2
  Scalar scaled_radius_sq(Scalar r2) const { return Scalar(m) * r2 / (log_m() * log_m()); }

  // m > exp(8(p' - 1 + n)); reported, not enforced.
  bool meets_size_threshold() const {
    using std::log;
    return log(Scalar(m)) > Scalar(8 * (p_prime - 1 + n));
  }
};

// Psi as a function of t = m|z|^2/(log m)^2.
template <class Scalar>
Scalar psi_scaled(const WeightParams<Scalar>& params, const CutoffProfile<Scalar>& profile, Scalar t) {
  using std::log;
  if (!(t > Scalar(0))) throw PoleError("Psi has a logarithmic pole at z = 0");
  if (t >= CutoffProfile<Scalar>::knot_outer) return Scalar(0);
  return params.coefficient() * profile.value(t) * log(t);
}

template <class Scalar>
Scalar psi(const WeightParams<Scalar>& params, const CutoffProfile<Scalar>& profile,
           std::complex<Scalar> z) {
  params.validate();
  return psi_scaled(params, profile, params.scaled_radius_sq(std::norm(z)));
}

template <class Scalar = double>
struct AnnulusGrid {
  // Sampled band in t = m|z|^2/(log m)^2; the default straddles the whole
  // transition [1/2, 1].
  Scalar t_inner = Scalar(0.45);
  Scalar t_outer = Scalar(1.05);
  int radial = 241;
  int angular = 8;
};

template <class Scalar = double>
struct HessianCheck {
  Scalar min_observed = 0;   // min over the grid of (d^2 Psi/dz dzbar) / g
  Scalar bound = 0;          // -100 m (n+2p') / ((log m)^2 2 pi)
  Scalar unscaled_bound = 0; // same without the 1/(2 pi) of omega_g
  Scalar margin = 0;         // min_observed - bound
  int points = 0;
  bool pass = false;
};

// Compares the finite-difference d^2 Psi/dz dzbar against the lower bound
// -100 m (n+2p')/(log m)^2 omega_g, with omega_g = (i/2pi) g dz^dzbar, at
// every grid point.
template <class Scalar>
HessianCheck<Scalar> psi_hessian_bound_check(const WeightParams<Scalar>& params,
                                             const CutoffProfile<Scalar>& profile,
                                             const ModelGeometry<Scalar>& geom,
                                             const AnnulusGrid<Scalar>& grid = {}) {
  using std::sqrt;
  params.validate();
  if (grid.radial < 2 || grid.angular < 1 || !(grid.t_inner < grid.t_outer))
    throw DomainError("degenerate annulus grid");

  const Scalar L = params.log_m();
  const Scalar to_radius = L / sqrt(Scalar(params.m));
  const Scalar r_inner = to_radius * sqrt(grid.t_inner);
  const Scalar r_outer = to_radius * sqrt(grid.t_outer);
  if (r_inner < to_radius / Scalar(10))
    throw DomainError("annulus grid reaches the pole of Psi");
  const Scalar h = Scalar(1e-4) * r_outer;
  if (!geom.contains(r_outer + h)) throw DomainError("annulus leaves the validity disk");

  auto psi_xy = [&](Scalar x, Scalar y) {
    return psi_scaled(params, profile, params.scaled_radius_sq(x * x + y * y));
  };

  HessianCheck<Scalar> out;
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  out.unscaled_bound = Scalar(-100) * Scalar(params.m) * params.coefficient() / (L * L);
  out.bound = out.unscaled_bound / two_pi;
  out.min_observed = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < grid.radial; ++i) {
    const Scalar r = r_inner + (r_outer - r_inner) * Scalar(i) / Scalar(grid.radial - 1);
    for (int j = 0; j < grid.angular; ++j) {
      const Scalar theta = two_pi * Scalar(j) / Scalar(grid.angular);
      const std::complex<Scalar> z = std::polar(r, theta);
      const Scalar ddbar = detail::wirtinger_mixed(psi_xy, z, h);
      const Scalar ratio = ddbar / metric_density(geom, z);
      if (ratio < out.min_observed) out.min_observed = ratio;
      ++out.points;
    }
  }
  out.margin = out.min_observed - out.bound;
  out.pass = out.min_observed >= out.bound;
  return out;
}

} // namespace bergman
